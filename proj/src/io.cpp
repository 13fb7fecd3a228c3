#include "operlab/io.hpp"

#include <fstream>

namespace operlab::io {

namespace {

mpq_class rational_from_json(const json& v) {
  if (v.is_string()) {
    mpq_class q(v.get<std::string>());
    q.canonicalize();
    return q;
  }
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_number()) return mpq_class(v.get<double>());
  throw ConfigError("expected a number or rational string");
}

RMat rows_to_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) throw ConfigError("expected a nested array matrix");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.front().size());
  RMat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (rows[i].size() != static_cast<std::size_t>(c)) throw ConfigError("ragged matrix rows");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = rational_from_json(rows[i][k]).get_d();
  }
  return m;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
}

CMat matrix_from_json(const json& j) {
  if (j.is_array()) return rows_to_matrix(j).cast<cplx>();
  if (!j.is_object() || !j.contains("re")) throw ConfigError("matrix must be a nested array or {n, re, im}");
  const RMat re = rows_to_matrix(j.at("re"));
  RMat im = RMat::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = rows_to_matrix(j.at("im"));
  if (im.rows() != re.rows() || im.cols() != re.cols()) throw ConfigError("re and im parts differ in shape");
  if (j.contains("n") && j.at("n").get<int>() != re.rows()) throw ConfigError("declared n does not match the matrix");
  CMat m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

RMat real_matrix_from_json(const json& j) {
  const CMat m = matrix_from_json(j);
  if (m.imag().cwiseAbs().maxCoeff() > 0.0) throw ConfigError("expected a real matrix");
  return m.real();
}

Matrix<QComplex> exact_matrix_from_json(const json& j) {
  const json re = j.is_array() ? j : j.at("re");
  const json im = j.is_object() && j.contains("im") ? j.at("im") : json();
  const auto r = static_cast<Eigen::Index>(re.size());
  const auto c = static_cast<Eigen::Index>(re.front().size());
  Matrix<QComplex> m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k)
      m(i, k) = QComplex(rational_from_json(re[i][k]), im.is_null() ? mpq_class(0) : rational_from_json(im[i][k]));
  return m;
}

json matrix_to_json(const CMat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return json{{"n", m.rows()}, {"re", re}, {"im", im}};
}

json matrix_to_json(const Matrix<QComplex>& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).re.get_str());
      ii.push_back(m(i, k).im.get_str());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return json{{"n", m.rows()}, {"re", re}, {"im", im}};
}

surface::GroupRepresentation representation_from_json(const json& j) {
  if (!j.contains("g") || !j.contains("r") || !j.contains("gens")) throw ConfigError("representation needs g, r, gens");
  surface::GroupRepresentation rep;
  try {
    rep.presentation = surface::SurfacePresentation(j.at("g").get<int>(), j.at("r").get<int>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto& gens = j.at("gens");
  for (int i = 0; i < rep.presentation.generator_count(); ++i) {
    const auto nm = rep.presentation.name(i);
    if (!gens.contains(nm)) throw ConfigError("representation is missing generator " + nm);
    rep.gens.push_back(real_matrix_from_json(gens.at(nm)));
  }
  for (const auto& [key, value] : gens.items()) {
    try {
      rep.presentation.index(key);
    } catch (const surface::UnknownGenerator&) {
      throw ConfigError("unknown generator " + key);
    }
  }
  return rep;
}

template <class S>
gauge::FormalConnection<S> connection_from_json(const json& j) {
  if (!j.contains("coeffs")) throw ConfigError("connection needs coeffs");
  gauge::FormalConnection<S> c;
  c.logarithmic = j.value("log", true);
  const int order = j.value("order", static_cast<int>(j.at("coeffs").size()) - 1);
  const auto& cs = j.at("coeffs");
  if (cs.empty()) throw ConfigError("connection needs at least one coefficient");
  for (int k = 0; k <= order; ++k) {
    Matrix<S> m;
    if (k < static_cast<int>(cs.size())) {
      if constexpr (is_exact_v<S>)
        m = exact_matrix_from_json(cs[k]);
      else
        m = matrix_from_json(cs[k]);
    } else {
      m = zeros<S>(c.coeffs.front().n(), c.coeffs.front().n());
    }
    if (m.rows() != m.cols()) throw ConfigError("connection coefficients must be square");
    c.coeffs.emplace_back(lie::SlAlgebra<S>(static_cast<int>(m.rows())), m);
  }
  c.validate();
  return c;
}

template <class S>
json connection_to_json(const gauge::FormalConnection<S>& c) {
  json coeffs = json::array();
  for (const auto& v : c.coeffs) coeffs.push_back(matrix_to_json(v.matrix()));
  return json{{"log", c.logarithmic}, {"order", c.order()}, {"coeffs", coeffs}};
}

template gauge::FormalConnection<cplx> connection_from_json<cplx>(const json&);
template gauge::FormalConnection<QComplex> connection_from_json<QComplex>(const json&);
template json connection_to_json<cplx>(const gauge::FormalConnection<cplx>&);
template json connection_to_json<QComplex>(const gauge::FormalConnection<QComplex>&);

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw ConfigError("expected a complex number as x, [re, im] or {re, im}");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

ode::MeromorphicSystem system_from_json(const json& j) {
  ode::MeromorphicSystem s;
  for (const auto& p : j.value("poles", json::array())) s.poles.push_back(complex_from_json(p));
  for (const auto& m : j.value("residues", json::array())) s.residues.push_back(matrix_from_json(m));
  for (const auto& m : j.value("poly", json::array())) s.poly.push_back(matrix_from_json(m));
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

}  // namespace operlab::io
