#include "pmcone/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pmcone {

using json = nlohmann::ordered_json;

namespace {

std::string pointer(const std::string &base, std::string_view key) {
  std::string out = base + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string pointer(const std::string &base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

Rational parse_entry(const json &v, const std::string &at) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > INT64_MAX)
      throw DocumentError(at, "integer out of range");
    return Rational(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::invalid_argument &e) {
      throw DocumentError(at, e.what());
    }
  }
  if (v.is_number()) throw DocumentError(at, "floating-point entries are not allowed, write \"p/q\"");
  throw DocumentError(at, "expected a rational string or an integer");
}

Matrix parse_matrix(const json &v, const std::string &at) {
  if (!v.is_array()) throw DocumentError(at, "expected an array of rows");
  const std::size_t n = v.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_at = pointer(at, i);
    const json &row = v[i];
    if (!row.is_array()) throw DocumentError(row_at, "expected an array");
    if (row.size() != n)
      throw DocumentError(row_at, "row has " + std::to_string(row.size()) + " entries, expected " +
                                      std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_entry(row[j], pointer(row_at, j));
  }
  return m;
}

std::vector<std::string> parse_labels(const json &v, const std::string &at) {
  if (!v.is_array()) throw DocumentError(at, "expected an array of labels");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) throw DocumentError(pointer(at, i), "labels must be strings");
    std::string label = v[i].get<std::string>();
    if (!seen.insert(label).second) throw DocumentError(pointer(at, i), "duplicate label " + label);
    out.push_back(std::move(label));
  }
  return out;
}

const json &require(const json &obj, std::string_view key, const std::string &at) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(at, "missing key \"" + std::string(key) + "\"");
  return *it;
}

} // namespace

const NamedMatrix *Document::find(std::string_view name) const {
  for (const auto &nm : pseudometrics)
    if (nm.name == name) return &nm;
  return nullptr;
}

Document parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    std::string what = e.what();
    // nlohmann prefixes "[json.exception.parse_error.101] parse error at line 1, column 2: "
    if (auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw DocumentError("byte " + std::to_string(e.byte), what);
  }
  if (!root.is_object()) throw DocumentError("/", "document must be an object");

  Document doc;
  for (const auto &[key, value] : root.items()) {
    (void)value;
    if (key != "space" && key != "pseudometrics" && key != "subset" && key != "bijection" &&
        key != "transcript")
      throw DocumentError(pointer("", key), "unknown key");
  }

  const json &space = require(root, "space", "");
  if (!space.is_object()) throw DocumentError("/space", "expected an object");
  doc.points = parse_labels(require(space, "points", "/space"), "/space/points");
  doc.matrix = parse_matrix(require(space, "matrix", "/space"), "/space/matrix");
  if (doc.matrix.size() != doc.points.size())
    throw DocumentError("/space/matrix", "matrix is " + std::to_string(doc.matrix.size()) +
                                             "x" + std::to_string(doc.matrix.size()) + " for " +
                                             std::to_string(doc.points.size()) + " points");

  if (auto it = root.find("pseudometrics"); it != root.end()) {
    if (!it->is_object()) throw DocumentError("/pseudometrics", "expected an object");
    for (const auto &[name, value] : it->items())
      doc.pseudometrics.push_back({name, parse_matrix(value, pointer("/pseudometrics", name))});
  }

  std::set<std::string> known(doc.points.begin(), doc.points.end());
  auto check_known = [&](const std::string &label, const std::string &at) {
    if (!known.contains(label)) throw DocumentError(at, "unknown point " + label);
  };

  if (auto it = root.find("subset"); it != root.end()) {
    doc.subset = parse_labels(*it, "/subset");
    for (std::size_t i = 0; i < doc.subset->size(); ++i)
      check_known((*doc.subset)[i], pointer("/subset", i));
  }

  if (auto it = root.find("bijection"); it != root.end()) {
    if (!it->is_object()) throw DocumentError("/bijection", "expected an object");
    doc.bijection.emplace();
    for (const auto &[from, to] : it->items()) {
      const std::string at = pointer("/bijection", from);
      if (!to.is_string()) throw DocumentError(at, "expected a label");
      doc.bijection->emplace_back(from, to.get<std::string>());
    }
  }
  return doc;
}

Document read_document(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const DocumentError &e) {
    throw DocumentError(path + ": " + e.where(),
                        std::string(e.what()).substr(e.where().size() + 2));
  }
}

json to_json(const Matrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Document &doc) {
  json root = json::object();
  root["space"] = {{"points", doc.points}, {"matrix", to_json(doc.matrix)}};
  if (!doc.pseudometrics.empty()) {
    json pm = json::object();
    for (const auto &nm : doc.pseudometrics) pm[nm.name] = to_json(nm.values);
    root["pseudometrics"] = std::move(pm);
  }
  if (doc.subset) root["subset"] = *doc.subset;
  if (doc.bijection) {
    json b = json::object();
    for (const auto &[from, to] : *doc.bijection) b[from] = to;
    root["bijection"] = std::move(b);
  }
  return root;
}

std::string print_document(const Document &doc) { return to_json(doc).dump(2) + "\n"; }

Document make_document(const Space &space,
                       const std::vector<std::pair<std::string, Pseudometric>> &named) {
  Document doc;
  doc.points = space.labels();
  doc.matrix = space.base_metric();
  for (const auto &[name, d] : named) doc.pseudometrics.push_back({name, d.values()});
  return doc;
}

SpacePtr build_space(const Document &doc) { return Space::create(doc.points, doc.matrix); }

Pseudometric build_pseudometric(const Document &doc, const SpacePtr &space, std::string_view name) {
  const NamedMatrix *nm = doc.find(name);
  if (!nm) throw Error("no pseudometric named " + std::string(name));
  return validate_pseudometric(space, nm->values);
}

Bijection build_bijection(const Document &doc, const Space &domain, const Space &codomain) {
  if (!doc.bijection) throw Error("document has no bijection");
  if (doc.bijection->size() != codomain.size())
    throw Error("bijection has " + std::to_string(doc.bijection->size()) + " entries for " +
                std::to_string(codomain.size()) + " codomain points");
  std::vector<PointId> images(codomain.size(), codomain.size());
  for (const auto &[from, to] : *doc.bijection) {
    const auto y = codomain.find(from);
    if (!y) throw Error("bijection source " + from + " is not a codomain point");
    const auto x = domain.find(to);
    if (!x) throw Error("bijection target " + to + " is not a domain point");
    images[*y] = *x;
  }
  return Bijection::create(std::move(images));
}

json to_json(const PeakingTranscript &t) {
  const Space &s = t.e.space();
  auto labels = [&](const std::vector<PointId> &ids) {
    json out = json::array();
    for (PointId p : ids) out.push_back(s.label(p));
    return out;
  };
  json annuli = json::array();
  for (const Annulus &a : t.annuli)
    annuli.push_back({{"n", a.n},
                      {"near_x", labels(a.near_x)},
                      {"near_y", labels(a.near_y)},
                      {"outer", labels(a.outer)}});
  json rho_n = json::array();
  for (const Pseudometric &r : t.rho_n) rho_n.push_back(to_json(r.values()));
  return {{"pair", {s.label(t.x), s.label(t.y)}},
          {"a", t.a.to_string()},
          {"b", t.b.to_string()},
          {"n0", t.n0},
          {"e", to_json(t.e.values())},
          {"d_prime", to_json(t.d_prime.values())},
          {"annuli", std::move(annuli)},
          {"rho_n", std::move(rho_n)},
          {"rho", to_json(t.rho.values())}};
}

} // namespace pmcone
