#include "curlset/cli.hpp"

#include "curlset/builder.hpp"
#include "curlset/io.hpp"
#include "curlset/problab.hpp"
#include "curlset/setlab.hpp"
#include "curlset/verifier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>

namespace curlset {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::string text;
  std::string digest;
};

Loaded load(const std::string& path) {
  try {
    Loaded l{readTextFile(path), {}};
    l.digest = digestHex(l.text);
    return l;
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

InstanceFile loadInstance(const Loaded& l) {
  try {
    return parseInstance(l.text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("instance: ") + e.what());
  }
}

struct Outcome {
  Json result;
  int code = kExitOk;
};

Outcome runClassify(const InstanceFile& inst) {
  return {toJson(classify(inst.elements, inst.partitionHint)), kExitOk};
}

Outcome runVerify(const PAField& field, const InstanceFile& inst, bool requireIntegral) {
  VerifyOptions opts;
  opts.epsilon = inst.epsilon;
  opts.requireNonzeroIntegral = requireIntegral;
  const VerificationReport r = verifyField(field, inst.elements, opts);
  return {toJson(r), r.pass ? kExitOk : kExitFailure};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify, construct and verify piecewise-affine solutions of curl inclusions", "curlset"};
  app.require_subcommand(1);

  std::string instancePath, domainPath, epsilonText, outPath, solutionPath, reportPath;
  bool noVerify = false, requireIntegral = false;
  int n = 0, k = 1, trials = 100, batch = 64, maxBatches = 12;
  std::uint64_t seed = 42;

  auto* classifyCmd = app.add_subcommand("classify", "Classify a finite set of 2-forms");
  classifyCmd->add_option("-i,--instance", instancePath, "Instance JSON")->required();
  classifyCmd->add_option("--report", reportPath, "Also write the run report here");

  auto* constructCmd = app.add_subcommand("construct", "Build a piecewise-affine solution");
  constructCmd->add_option("-i,--instance", instancePath, "Instance JSON")->required();
  constructCmd->add_option("--domain", domainPath, "Domain JSON (overrides the instance's)");
  constructCmd->add_option("--epsilon", epsilonText, "Coverage slack p/q in (0,1) (overrides the instance's)");
  constructCmd->add_option("-o,--output", outPath, "Mesh output path")->required();
  constructCmd->add_flag("--no-verify", noVerify, "Skip the verification pass");
  constructCmd->add_option("--report", reportPath, "Also write the run report here");

  auto* verifyCmd = app.add_subcommand("verify", "Verify a mesh against an instance");
  verifyCmd->add_option("-s,--solution", solutionPath, "Mesh JSON")->required();
  verifyCmd->add_option("-i,--instance", instancePath, "Instance JSON")->required();
  verifyCmd->add_flag("--require-integral", requireIntegral, "Fail when the integral of the field is zero");
  verifyCmd->add_option("--report", reportPath, "Also write the run report here");

  auto* labCmd = app.add_subcommand("lab", "Sampling probes");
  labCmd->require_subcommand(1);
  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "Ambient dimension")->required();
    cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--report", reportPath, "Also write the run report here");
  };
  auto* vectorCmd = labCmd->add_subcommand("vector-span", "span{x ∧ f(x)} for affine f: R^n -> R^n, f(0) != 0");
  addCommon(vectorCmd);
  auto* kformCmd = labCmd->add_subcommand("kform-span", "span{x ∧ f(x)} for affine f into k-forms");
  addCommon(kformCmd);
  kformCmd->add_option("--k", k, "Form degree");
  for (auto* cmd : {vectorCmd, kformCmd}) {
    cmd->add_option("--batch", batch, "Samples per batch")->check(CLI::PositiveNumber);
    cmd->add_option("--max-batches", maxBatches, "Batch cap per trial")->check(CLI::PositiveNumber);
  }
  auto* isoCmd = labCmd->add_subcommand("isotropy", "Span of families with pairwise rank differences <= 2");
  addCommon(isoCmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  Outcome outcome;
  try {
    if (classifyCmd->parsed()) {
      const Loaded in = load(instancePath);
      report["subcommand"] = "classify";
      report["input_digest"] = in.digest;
      outcome = runClassify(loadInstance(in));
    } else if (constructCmd->parsed()) {
      const Loaded in = load(instancePath);
      InstanceFile inst = loadInstance(in);
      std::string digest = in.digest;
      if (!domainPath.empty()) {
        const Loaded d = load(domainPath);
        try {
          inst.domain = domainFromJson(parseJsonText(d.text), inst.n);
        } catch (const ParseError& e) {
          throw UsageError(std::string("domain: ") + e.what());
        }
        digest = digestHex(in.text + d.text);
      }
      if (!epsilonText.empty()) {
        try {
          inst.epsilon = parseRational(epsilonText);
        } catch (const std::invalid_argument& e) {
          throw UsageError(std::string("--epsilon: ") + e.what());
        }
        if (inst.epsilon <= 0 || inst.epsilon >= 1) throw UsageError("--epsilon must lie in (0, 1)");
      }
      report["subcommand"] = "construct";
      report["input_digest"] = digest;
      const ClassificationReport cls = classify(inst.elements, inst.partitionHint);
      Json result{{"verdict", verdictName(cls.verdict)}};
      std::optional<PAField> field;
      if (cls.verdict == Verdict::SolvableLine) {
        field = buildLineSolution(inst.elements, inst.domain, inst.epsilon);
      } else if (cls.verdict == Verdict::SolvableComposite) {
        field = buildComposite(inst.elements, cls.partition, inst.domain, inst.epsilon);
      } else {
        result["error"] = "no construction is available for verdict " + verdictName(cls.verdict);
        result["classification"] = toJson(cls);
        outcome = {result, kExitFailure};
      }
      if (field) {
        writeTextFile(outPath, toJson(*field).dump(1) + "\n");
        result["mesh_path"] = outPath;
        result["cells"] = field->cells.size();
        result["covered_volume"] = toJson(field->coveredVolume);
        outcome.code = kExitOk;
        if (!noVerify) {
          const Outcome v = runVerify(*field, inst, false);
          result["verification"] = v.result;
          outcome.code = v.code;
        }
        outcome.result = result;
      }
    } else if (verifyCmd->parsed()) {
      const Loaded sol = load(solutionPath);
      const Loaded in = load(instancePath);
      const InstanceFile inst = loadInstance(in);
      PAField field;
      try {
        field = fieldFromJson(parseJsonText(sol.text));
      } catch (const ParseError& e) {
        throw UsageError(std::string("mesh: ") + e.what());
      }
      if (field.n != inst.n) throw UsageError("mesh and instance dimensions differ");
      report["subcommand"] = "verify";
      report["input_digest"] = digestHex(sol.text + in.text);
      outcome = runVerify(field, inst, requireIntegral);
    } else {
      const std::string params = std::to_string(n) + "/" + std::to_string(k) + "/" + std::to_string(trials) + "/" +
                                 std::to_string(batch) + "/" + std::to_string(maxBatches) + "/" + std::to_string(seed);
      report["input_digest"] = digestHex(params);
      const ProbeOptions opts{batch, maxBatches};
      try {
        ProbeSummary s;
        if (vectorCmd->parsed()) {
          report["subcommand"] = "lab vector-span";
          s = vectorSpanProbe(n, trials, seed, opts);
        } else if (kformCmd->parsed()) {
          report["subcommand"] = "lab kform-span";
          s = kformSpanProbe(n, k, trials, seed, opts);
        } else {
          report["subcommand"] = "lab isotropy";
          s = isotropyProbe(n, trials, seed);
        }
        outcome = {toJson(s), kExitOk};
      } catch (const ProbeViolation& v) {
        Json witness;
        if (!v.family().empty()) {
          witness = Json::array();
          for (const auto& w : v.family()) witness.push_back(toJson(w));
        } else {
          witness = toJson(v.spec());
        }
        outcome = {{{"violation", v.what()}, {"witness", witness}}, kExitFailure};
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  report["result"] = outcome.result;
  report["exit_code"] = outcome.code;
  report["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const std::string text = report.dump(1) + "\n";
  out << text;
  if (!reportPath.empty()) {
    try {
      writeTextFile(reportPath, text);
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return outcome.code;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace curlset
