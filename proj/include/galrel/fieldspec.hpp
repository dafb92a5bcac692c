#ifndef GALREL_FIELDSPEC_HPP
#define GALREL_FIELDSPEC_HPP

/* JSON field descriptions: minimal polynomial, optional integral basis and
   automorphism images, all integer or rational-string entries.  The same
   format is accepted on the command line and used by the bundled fixtures. */

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "number_field.hpp"

namespace galrel {

struct RegulatorRef {
  std::string value; /* decimal string */
  double radius;
};

struct FieldSpec {
  std::string name;
  QPoly min_poly;
  bool has_basis = false;
  QMatrix basis{0, 0}; /* rows = integral basis in power coordinates */
  std::vector<QPoly> hints;
  std::string base; /* name of the base field of the extension, "" = Q */
  std::optional<RegulatorRef> regulator;
};

namespace detail {

inline Rational json_rational(const nlohmann::json &v) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw input_error("expected an integer or a rational string");
}

inline QPoly json_poly(const nlohmann::json &v) {
  if (!v.is_array()) throw input_error("expected an array of coefficients");
  QPoly p;
  for (auto &c : v) p.push_back(json_rational(c));
  return poly_trim(p);
}

} // namespace detail

inline FieldSpec parse_field_spec(const nlohmann::json &j) {
  FieldSpec fs;
  if (!j.is_object()) throw input_error("field description must be a JSON object");
  if (j.contains("name")) fs.name = j.at("name").get<std::string>();
  if (!j.contains("min_poly")) throw input_error("field description lacks min_poly");
  fs.min_poly = detail::json_poly(j.at("min_poly"));
  int n = poly_deg(fs.min_poly);
  if (n < 1) throw input_error("min_poly must have positive degree");
  if (j.contains("integral_basis")) {
    auto &b = j.at("integral_basis");
    if (!b.is_array() || b.size() != size_t(n))
      throw input_error("integral_basis must have one row per degree");
    fs.has_basis = true;
    fs.basis = QMatrix(n, n);
    for (int i = 0; i < n; ++i) {
      auto &row = b.at(size_t(i));
      if (!row.is_array() || row.size() != size_t(n))
        throw input_error("integral_basis rows must have length equal to the degree");
      for (int k = 0; k < n; ++k) fs.basis.at(i, k) = detail::json_rational(row.at(size_t(k)));
    }
  }
  if (j.contains("automorphism_hints")) {
    for (auto &row : j.at("automorphism_hints")) fs.hints.push_back(detail::json_poly(row));
  }
  if (j.contains("base")) fs.base = j.at("base").get<std::string>();
  if (j.contains("regulator")) {
    auto &r = j.at("regulator");
    fs.regulator = RegulatorRef{r.at("value").get<std::string>(), r.at("radius").get<double>()};
  }
  return fs;
}

inline FieldSpec load_field_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open field description " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw input_error("bad JSON in " + path + ": " + e.what());
  }
  try {
    return parse_field_spec(j);
  } catch (const nlohmann::json::exception &e) {
    throw input_error("bad field description in " + path + ": " + e.what());
  }
}

inline FieldPtr field_from_spec(const FieldSpec &fs, long precision_bits = 0) {
  return make_field(fs.min_poly, fs.has_basis ? &fs.basis : nullptr, precision_bits);
}

/* hints when present, discovery otherwise */
inline std::vector<Automorphism> automorphisms_from_spec(const FieldPtr &K, const FieldSpec &fs) {
  return automorphisms(K, fs.hints);
}

} // namespace galrel

#endif
