#pragma once

// JSON conversions shared by the CLI and the fixture loaders.

#include "operlab/formal_gauge.hpp"
#include "operlab/ode_monodromy.hpp"
#include "operlab/scalar.hpp"
#include "operlab/surface_group.hpp"

#include <json.hpp>

#include <string>

namespace operlab::io {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);

/// Accepts a nested real array [[..],..] or {"n": N, "re": [[..]], "im": [[..]]}.
CMat matrix_from_json(const json& j);
RMat real_matrix_from_json(const json& j);
json matrix_to_json(const CMat& m);
/// Exact matrices: entries are written as strings "p/q" in "re"/"im".
json matrix_to_json(const Matrix<QComplex>& m);
Matrix<QComplex> exact_matrix_from_json(const json& j);

/// {"g": g, "r": r, "gens": {"A1": matrix, ...}}
surface::GroupRepresentation representation_from_json(const json& j);

/// {"log": true, "order": M, "coeffs": [matrix, ...]}
template <class S>
gauge::FormalConnection<S> connection_from_json(const json& j);
template <class S>
json connection_to_json(const gauge::FormalConnection<S>& c);

/// {"poles": [..], "residues": [matrix..], "poly": [matrix..]}
ode::MeromorphicSystem system_from_json(const json& j);

cplx complex_from_json(const json& j);
json complex_to_json(cplx z);

}  // namespace operlab::io
