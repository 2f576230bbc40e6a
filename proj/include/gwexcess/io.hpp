#pragma once

// JSON reading and writing for fields, elements, polynomials, matrices and
// the library's reports.
//
// Fields: "F31", "F3^2" (build_extension(3, 2, 0)), "Q", or
// {"p": 3, "modulus": [ascending coefficients]}.
// Elements: integers (signed representatives for prime fields), "a/b"
// strings over Q, ascending coefficient arrays for extensions.
// Polynomials: expression strings such as "x0*x3 - 2*x1^2" (variables x0..,
// or names from a "vars" list; t is the extension generator), or term lists
// [[exponents], coefficient].

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwexcess/excess.hpp"
#include "gwexcess/gw.hpp"
#include "gwexcess/points.hpp"
#include "gwexcess/poly.hpp"
#include "gwexcess/residual.hpp"

namespace gwexcess::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

Field parse_field(const json& j);
json field_to_json(const Field& f);

Elem parse_elem(const Field& f, const json& j);
json elem_to_json(const Elem& e);

Poly parse_poly(const Field& f, std::size_t nvars, const json& j, const std::vector<std::string>& names = {});
Poly parse_poly_string(const Field& f, std::size_t nvars, const std::string& s,
                       const std::vector<std::string>& names = {});
json poly_to_json(const Poly& p, const std::vector<std::string>& names = {});

json matrix_to_json(const Matrix& m);
Matrix parse_matrix(const Field& f, const json& j);
json vector_to_json(const Vector& v);

json gw_to_json(const GWClass& c);

// {"field", "n", "M"} with M[i][v] = [c0, c1, c2], or {"field", "n",
// "quadrics"}; both may be present, in which case they must agree.
struct ParsedExcess {
  ExcessInput input;
  std::optional<std::vector<Poly>> quadrics;
};
// Throws InadmissibleInput when M and quadrics disagree.
ParsedExcess parse_excess_input(const json& j);
json excess_input_to_json(const ExcessInput& in, const std::optional<std::vector<Poly>>& quadrics = std::nullopt);

json excess_report_to_json(const ExcessReport& r);
json closed_point_to_json(const ClosedPoint& p);
json verdict_to_json(const OracleVerdict& v);
json screen_to_json(const FiberScreen& s);

json module_form_to_json(const ModuleForm& m, const std::vector<std::string>& names = {});
json scalar_form_to_json(const ScalarForm& s);

}  // namespace gwexcess::io
