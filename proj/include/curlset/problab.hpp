#ifndef CURLSET_PROBLAB_HPP
#define CURLSET_PROBLAB_HPP

#include "curlset/exterior.hpp"
#include "curlset/rational.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

// Sampling probes for the span of {x ∧ f(x)} and for families with pairwise
// rank differences at most 2. Sample points are integer, arithmetic is exact,
// so a reported dimension is always a true lower bound.

namespace curlset {

/// Affine map f(x) = offset + linear·x from R^n into Λ^k, coefficients in the
/// lexicographic layout (linear has C(n,k) rows and n columns).
struct MapSpec {
  int n = 0;
  int k = 0;
  MatrixQ linear;
  VectorQ offset;
  std::string name = "affine";

  Form operator()(const VectorQ& x) const;

  /// f(x) = x_1 e^1 + e^2 on R^3.
  static MapSpec shearExample();
  /// f(x) = (x_1 + 1) e^1∧…∧e^{n−2} + x_2 e^1∧…∧e^{n−3}∧e^{n−1}, values in Λ^{n−2}.
  static MapSpec codimTwoExample(int n);
  static MapSpec constant(const VectorQ& c);
};

std::vector<Form> sampleWedgeMap(const MapSpec& spec, const std::vector<VectorQ>& points);

struct ProbeResult {
  std::vector<int> sampleCounts;  // cumulative samples after each batch
  std::vector<int> trajectory;    // span dimension after each batch
  bool stabilized = false;        // three consecutive equal batch dimensions
  int finalDim = 0;
};

using ProbeRng = std::mt19937_64;

inline constexpr int kSampleBound = 5;

ProbeResult stabilizedSpanDim(const MapSpec& spec, int batchSize, int maxBatches, std::uint64_t seed);

struct ProbeSummary {
  std::string probe;
  int n = 0;
  int k = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int forbidden = 0;                // dimension the probe must never see
  std::map<int, int> histogram;     // final dimension -> trial count
  int unstabilized = 0;             // trials that hit maxBatches first
  int violations = 0;
};

/// Thrown when a probe observes the forbidden dimension; carries the map or
/// family that did it.
class ProbeViolation : public std::runtime_error {
 public:
  ProbeViolation(const std::string& what, MapSpec spec) : std::runtime_error(what), spec_(std::move(spec)) {}
  ProbeViolation(const std::string& what, std::vector<Form> family)
      : std::runtime_error(what), family_(std::move(family)) {}
  const MapSpec& spec() const { return spec_; }
  const std::vector<Form>& family() const { return family_; }

 private:
  MapSpec spec_;
  std::vector<Form> family_;
};

struct ProbeOptions {
  int batchSize = 64;
  int maxBatches = 12;
};

/// Random affine f: R^n → R^n with f(0) ≠ 0 (n >= 4); the span of x ∧ f(x)
/// must never have dimension n.
ProbeSummary vectorSpanProbe(int n, int trials, std::uint64_t seed, const ProbeOptions& options = {});

/// Random affine f: R^n → Λ^k with f(0) a nonzero decomposable form
/// (1 <= k <= n − 3); the span must never have dimension n − k + 1.
ProbeSummary kformSpanProbe(int n, int k, int trials, std::uint64_t seed, const ProbeOptions& options = {});

/// Random families {ω0} ∪ {ω0 + x_i ∧ b} in Λ^2(R^n); they have pairwise
/// rank differences <= 2 and must span at most n dimensions.
ProbeSummary isotropyProbe(int n, int trials, std::uint64_t seed);

/// The structured family used by isotropyProbe for one trial.
std::vector<Form> isotropyFamily(int n, ProbeRng& rng);

/// Per-trial seed derived from the master seed.
std::uint64_t trialSeed(std::uint64_t master, int trial);

}  // namespace curlset

#endif  // CURLSET_PROBLAB_HPP
