#ifndef CURLSET_IO_HPP
#define CURLSET_IO_HPP

#include "curlset/builder.hpp"
#include "curlset/problab.hpp"
#include "curlset/setlab.hpp"
#include "curlset/verifier.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

// JSON interchange. Every rational travels as a "p/q" (or "p") string; on
// input plain JSON integers are accepted too.

namespace curlset {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json toJson(const Rational& x);
Json toJson(const VectorQ& v);
Json toJson(const MatrixQ& m);
Json toJson(const Form& w);
Json toJson(const Box& b);
Json toJson(const BoxDomain& d);
Json toJson(const PAField& f);
Json toJson(const RicoCertificate& c);
Json toJson(const ClassificationReport& r);
Json toJson(const VerificationReport& r);
Json toJson(const MapSpec& s);
Json toJson(const ProbeSummary& s);
Json toJson(const ProbeResult& r);

Rational rationalFromJson(const Json& j);
VectorQ vectorFromJson(const Json& j, std::optional<int> size = std::nullopt);
MatrixQ matrixFromJson(const Json& j, int rows, int cols);
/// Checks n and k against the expected values when given.
Form formFromJson(const Json& j, std::optional<int> n = std::nullopt, std::optional<int> k = std::nullopt);
Box boxFromJson(const Json& j, std::optional<int> n = std::nullopt);
/// Accepts an array of boxes, a single box, or {"boxes": [...]}.
BoxDomain domainFromJson(const Json& j, std::optional<int> n = std::nullopt);
PAField fieldFromJson(const Json& j);
RicoCertificate ricoFromJson(const Json& j, int n);
ClassificationReport classificationFromJson(const Json& j);
VerificationReport verificationFromJson(const Json& j);
MapSpec mapSpecFromJson(const Json& j);
ProbeSummary probeSummaryFromJson(const Json& j);

struct InstanceFile {
  int n;
  FormSet elements;
  std::optional<PartitionHint> partitionHint;
  BoxDomain domain;  // unit cube unless given
  Rational epsilon;  // 1/100 unless given
};

/// Strict parse: unknown keys, malformed rationals, wrong coefficient counts,
/// duplicate elements and epsilon outside (0, 1) are errors.
InstanceFile parseInstance(const std::string& text);
Json toJson(const InstanceFile& f);

Json parseJsonText(const std::string& text);
std::string readTextFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& text);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digestHex(const std::string& text);

}  // namespace curlset

#endif  // CURLSET_IO_HPP
