#include "curlset/problab.hpp"

#include "curlset/linalg.hpp"
#include "curlset/setlab.hpp"

#include <algorithm>

namespace curlset {

Form MapSpec::operator()(const VectorQ& x) const {
  if (x.size() != n) throw std::invalid_argument("sample point dimension differs from the map's");
  return Form(n, k, VectorQ(offset + linear * x));
}

MapSpec MapSpec::shearExample() {
  MapSpec s;
  s.n = 3;
  s.k = 1;
  s.linear = MatrixQ::Zero(3, 3);
  s.linear(0, 0) = 1;
  s.offset = unitVector(3, 1);
  s.name = "shear";
  return s;
}

MapSpec MapSpec::codimTwoExample(int n) {
  if (n < 4) throw std::invalid_argument("codimTwoExample needs n >= 4");
  MapSpec s;
  s.n = n;
  s.k = n - 2;
  const auto rows = static_cast<Eigen::Index>(binomial(n, n - 2));
  s.linear = MatrixQ::Zero(rows, n);
  s.offset = VectorQ::Zero(rows);
  const std::uint32_t head = (1u << (n - 3)) - 1;  // e^1 ∧ … ∧ e^{n−3}
  const auto first = static_cast<Eigen::Index>(basisIndex(n, head | (1u << (n - 3))));
  const auto second = static_cast<Eigen::Index>(basisIndex(n, head | (1u << (n - 2))));
  s.offset(first) = 1;
  s.linear(first, 0) = 1;
  s.linear(second, 1) = 1;
  s.name = "codim-two";
  return s;
}

MapSpec MapSpec::constant(const VectorQ& c) {
  MapSpec s;
  s.n = static_cast<int>(c.size());
  s.k = 1;
  s.linear = MatrixQ::Zero(s.n, s.n);
  s.offset = c;
  s.name = "constant";
  return s;
}

std::vector<Form> sampleWedgeMap(const MapSpec& spec, const std::vector<VectorQ>& points) {
  std::vector<Form> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(wedge(x, spec(x)));
  return out;
}

std::uint64_t trialSeed(std::uint64_t master, int trial) {
  // splitmix64 step on master + trial
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

long uniform(ProbeRng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

VectorQ randomVector(ProbeRng& rng, int n, long bound) {
  VectorQ v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(rng, -bound, bound);
  return v;
}

MatrixQ randomMatrix(ProbeRng& rng, Eigen::Index rows, Eigen::Index cols, long bound) {
  MatrixQ m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

VectorQ nonzeroVector(ProbeRng& rng, int n, long bound) {
  VectorQ v;
  do v = randomVector(rng, n, bound);
  while (isZero(v));
  return v;
}

void record(ProbeSummary& s, const ProbeResult& r) {
  ++s.histogram[r.finalDim];
  if (!r.stabilized) ++s.unstabilized;
}

std::string describe(const MapSpec& spec) {
  std::string out = "f(x) = offset + L x with offset [";
  for (Eigen::Index i = 0; i < spec.offset.size(); ++i) out += (i ? ", " : "") + formatRational(spec.offset(i));
  out += "] and L rows";
  for (Eigen::Index i = 0; i < spec.linear.rows(); ++i) {
    out += " [";
    for (Eigen::Index j = 0; j < spec.linear.cols(); ++j) out += (j ? ", " : "") + formatRational(spec.linear(i, j));
    out += "]";
  }
  return out;
}

}  // namespace

ProbeResult stabilizedSpanDim(const MapSpec& spec, int batchSize, int maxBatches, std::uint64_t seed) {
  if (batchSize < spec.n) throw std::invalid_argument("batch size must be at least n");
  if (maxBatches < 1) throw std::invalid_argument("need at least one batch");
  ProbeRng rng(seed);
  SpanBuilder<Rational> span(static_cast<Eigen::Index>(binomial(spec.n, spec.k + 1)));
  ProbeResult r;
  int samples = 0;
  for (int batch = 0; batch < maxBatches; ++batch) {
    for (int i = 0; i < batchSize; ++i) {
      const VectorQ x = randomVector(rng, spec.n, kSampleBound);
      const Form w = wedge(x, spec(x));
      if (w.size() > 0) span.insert(w.coeffs());
    }
    samples += batchSize;
    r.sampleCounts.push_back(samples);
    r.trajectory.push_back(static_cast<int>(span.dimension()));
    const std::size_t t = r.trajectory.size();
    if (t >= 3 && r.trajectory[t - 1] == r.trajectory[t - 2] && r.trajectory[t - 2] == r.trajectory[t - 3]) {
      r.stabilized = true;
      break;
    }
  }
  r.finalDim = r.trajectory.back();
  return r;
}

ProbeSummary vectorSpanProbe(int n, int trials, std::uint64_t seed, const ProbeOptions& options) {
  if (n < 4) throw std::invalid_argument("the vector span probe needs n >= 4");
  ProbeSummary s{"vector-span", n, 1, trials, seed, n, {}, 0, 0};
  for (int t = 0; t < trials; ++t) {
    ProbeRng rng(trialSeed(seed, t));
    MapSpec spec;
    spec.n = n;
    spec.k = 1;
    spec.linear = randomMatrix(rng, n, n, 3);
    spec.offset = nonzeroVector(rng, n, 3);
    const ProbeResult r = stabilizedSpanDim(spec, options.batchSize, options.maxBatches, rng());
    record(s, r);
    if (r.finalDim == s.forbidden) {
      ++s.violations;
      throw ProbeViolation("span of x ∧ f(x) reached dimension " + std::to_string(n) + " for " + describe(spec), spec);
    }
  }
  return s;
}

ProbeSummary kformSpanProbe(int n, int k, int trials, std::uint64_t seed, const ProbeOptions& options) {
  if (k < 1 || k > n - 3) throw std::invalid_argument("the k-form span probe needs 1 <= k <= n - 3");
  ProbeSummary s{"kform-span", n, k, trials, seed, n - k + 1, {}, 0, 0};
  const auto rows = static_cast<Eigen::Index>(binomial(n, k));
  for (int t = 0; t < trials; ++t) {
    ProbeRng rng(trialSeed(seed, t));
    MapSpec spec;
    spec.n = n;
    spec.k = k;
    spec.linear = randomMatrix(rng, rows, n, 3);
    Form base;
    do {
      base = Form::scalar(n, 1);
      for (int i = 0; i < k; ++i) base = wedge(nonzeroVector(rng, n, 2), base);
    } while (base.isZero());
    spec.offset = base.coeffs();
    const ProbeResult r = stabilizedSpanDim(spec, options.batchSize, options.maxBatches, rng());
    record(s, r);
    if (r.finalDim == s.forbidden) {
      ++s.violations;
      throw ProbeViolation("span of x ∧ f(x) reached dimension " + std::to_string(s.forbidden) + " for " +
                               describe(spec),
                           spec);
    }
  }
  return s;
}

std::vector<Form> isotropyFamily(int n, ProbeRng& rng) {
  const Form base(n, 2, randomVector(rng, static_cast<int>(binomial(n, 2)), 2));
  const VectorQ b = nonzeroVector(rng, n, 2);
  const long count = uniform(rng, 1, n + 2);
  std::vector<Form> family{base};
  for (long i = 0; i < count; ++i) {
    Form w = base + wedge(randomVector(rng, n, 3), b);
    if (std::find(family.begin(), family.end(), w) == family.end()) family.push_back(std::move(w));
  }
  return family;
}

ProbeSummary isotropyProbe(int n, int trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("the isotropy probe needs n >= 2");
  ProbeSummary s{"isotropy", n, 2, trials, seed, n + 1, {}, 0, 0};
  for (int t = 0; t < trials; ++t) {
    ProbeRng rng(trialSeed(seed, t));
    auto family = isotropyFamily(n, rng);
    const FormSet set(n, family);
    const int dim = spanDim(set);
    ++s.histogram[dim];
    if (!pairwiseRankDiffLe2(set) || dim > n) {
      ++s.violations;
      throw ProbeViolation("family with pairwise rank differences <= 2 spans " + std::to_string(dim) +
                               " dimensions in R^" + std::to_string(n),
                           std::move(family));
    }
  }
  return s;
}

}  // namespace curlset
