#pragma once

#include "pmcone/oracle.hpp"
#include "pmcone/peaking.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmcone {

/// Malformed document. `where` is a byte offset ("byte 17") for syntax errors
/// or a JSON pointer ("/space/matrix/1/2") for structural ones.
class DocumentError : public Error {
public:
  DocumentError(std::string where, const std::string &what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string &where() const { return where_; }

private:
  std::string where_;
};

struct NamedMatrix {
  std::string name;
  Matrix values;

  friend bool operator==(const NamedMatrix &, const NamedMatrix &) = default;
};

/// On-disk form of a space plus optional named pseudometrics, a subset and a
/// bijection. Matrices are checked for shape and rational entries only; the
/// axioms are checked when the matrices are turned into core types.
///
///   {"space": {"points": ["p", "q"], "matrix": [["0", "1"], ["1", "0"]]},
///    "pseudometrics": {"d": [["0", "1/2"], ["1/2", "0"]]},
///    "subset": ["p"],
///    "bijection": {"p": "q", "q": "p"}}
///
/// Bijections map codomain labels to domain labels. A "transcript" key, as
/// written by the peak command, is accepted and ignored.
struct Document {
  std::vector<std::string> points;
  Matrix matrix;
  std::vector<NamedMatrix> pseudometrics;
  std::optional<std::vector<std::string>> subset;
  std::optional<std::vector<std::pair<std::string, std::string>>> bijection;

  friend bool operator==(const Document &, const Document &) = default;

  const NamedMatrix *find(std::string_view name) const;
};

Document parse_document(std::string_view text);
Document read_document(const std::string &path);
nlohmann::ordered_json to_json(const Document &doc);
std::string print_document(const Document &doc);

/// Document holding a space and the given pseudometrics, in order.
Document make_document(const Space &space, const std::vector<std::pair<std::string, Pseudometric>> &named);

SpacePtr build_space(const Document &doc);
/// The named matrix as a pseudometric on `space`; throws AxiomViolation.
Pseudometric build_pseudometric(const Document &doc, const SpacePtr &space, std::string_view name);
/// Reads the bijection section as codomain label -> domain label.
Bijection build_bijection(const Document &doc, const Space &domain, const Space &codomain);

nlohmann::ordered_json to_json(const Matrix &m);
nlohmann::ordered_json to_json(const PeakingTranscript &t);

} // namespace pmcone
