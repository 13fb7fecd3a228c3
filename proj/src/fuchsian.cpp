#include "operlab/fuchsian.hpp"

#include "operlab/gauss.hpp"
#include "operlab/io.hpp"
#include "operlab/log.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace operlab::fuchsian {

namespace {

constexpr double kPi = std::numbers::pi;

RMat mat2(double a, double b, double c, double d) {
  RMat m(2, 2);
  m << a, b, c, d;
  return m;
}

RMat inverse2(const RMat& m) { return mat2(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)) / m.determinant(); }

cplx automorphy(const RMat& m, cplx z) { return m(1, 0) * z + m(1, 1); }

IdealPoint ideal_from_json(const io::json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "oo") return {true, 0.0};
    throw FixtureError("unknown ideal vertex '" + s + "'");
  }
  return {false, v.get<double>()};
}

}  // namespace

cplx mobius_apply(const RMat& m, cplx z) {
  const cplx den = m(1, 0) * z + m(1, 1);
  if (den == 0.0) throw std::domain_error("Mobius map sends the point to infinity");
  return (m(0, 0) * z + m(0, 1)) / den;
}

cplx mobius_apply(const CMat& m, cplx z) {
  const cplx den = m(1, 0) * z + m(1, 1);
  if (den == 0.0) throw std::domain_error("Mobius map sends the point to infinity");
  return (m(0, 0) * z + m(0, 1)) / den;
}

cplx mobius_derivative(const RMat& m, cplx z) {
  const cplx j = automorphy(m, z);
  return m.determinant() / (j * j);
}

// ------------------------------------------------------------------ fixtures

Fixture load_fixture_file(const std::string& path) {
  const auto j = io::read_json_file(path);
  Fixture f;
  f.name = j.value("name", std::filesystem::path(path).stem().string());
  f.directory = std::filesystem::path(path).parent_path().string();
  f.rep = io::representation_from_json(j);
  f.rep.validate();
  if (!j.contains("domain")) throw FixtureError("fixture has no domain");
  const auto& d = j.at("domain");
  const auto kind = d.value("kind", std::string("ideal_polygon"));
  if (kind == "ideal_polygon") {
    f.domain.kind = FundamentalDomain::Kind::ideal_polygon;
    for (const auto& v : d.at("vertices")) f.domain.ideal_vertices.push_back(ideal_from_json(v));
  } else if (kind == "compact_polygon") {
    f.domain.kind = FundamentalDomain::Kind::compact_polygon;
    for (const auto& v : d.at("vertices")) f.domain.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  } else {
    throw FixtureError("unknown domain kind " + kind);
  }
  f.domain.expected_area = j.value("expected_area_over_pi", 0.0) * kPi;
  f.domain.truncation_height = d.value("truncation_height", 3.0);
  for (const auto& m : j.value("normalizer", io::json::array())) {
    RMat n = io::real_matrix_from_json(m);
    if (std::abs(n.determinant() - 1.0) > 1e-12) throw FixtureError("normalizer element is not unimodular");
    f.normalizer.push_back(n);
  }
  const auto forms = j.value("forms", io::json::object());
  for (const auto& [w, files] : forms.items())
    for (const auto& file : files) f.form_files[std::stoi(w)].push_back(file.get<std::string>());
  return f;
}

std::vector<std::string> fixture_names() { return {"once_punctured_torus", "gamma0_4", "genus2_closed"}; }

Fixture fixture_group(const std::string& name, const std::string& data_dir) {
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw FixtureError("unknown fixture " + name);
  return load_fixture_file(data_dir + "/fixtures/" + name + ".json");
}

// ---------------------------------------------------------------- quadrature

RMat ideal_triangle_map(const IdealPoint& a, const IdealPoint& b, const IdealPoint& c) {
  // T1 sends (a, b, c) to (0, 1, inf); T2 sends (-1, 1, inf) there too.
  RMat t1;
  if (c.infinite)
    t1 = mat2(1.0, -a.x, 0.0, b.x - a.x);
  else if (a.infinite)
    t1 = mat2(0.0, b.x - c.x, 1.0, -c.x);
  else if (b.infinite)
    t1 = mat2(1.0, -a.x, 1.0, -c.x);
  else
    t1 = mat2(b.x - c.x, -a.x * (b.x - c.x), b.x - a.x, -c.x * (b.x - a.x));
  if (std::abs(t1.determinant()) < 1e-300) throw FixtureError("degenerate ideal triangle");
  const RMat t2 = mat2(1.0, 1.0, 0.0, 2.0);
  RMat m = inverse2(t1) * t2;
  const double det = m.determinant();
  if (det < 0) return ideal_triangle_map(b, a, c);
  return m / std::sqrt(det);
}

namespace {

/// Integrand times jacobian, with the sum of the moduli of the folded terms.
struct Sample {
  cplx value;
  double mass;
};

/// A rectangle [0,1]^2 parameter chart.
struct Chart {
  std::function<Sample(double, double)> f;
  bool tail = false;
};

// Rotation of order 3 of the standard triangle: -1 -> 1 -> inf -> -1.
const RMat& rho() {
  static const RMat r = mat2(-1.0, -3.0, 1.0, -1.0) / 2.0;
  return r;
}

double lower_boundary(double x) {
  const double t = 1.0 - std::abs(x);
  return std::sqrt(4.0 - t * t);
}

std::vector<Chart> ideal_triangle_charts(const Integrand& h, const RMat& m, double Y) {
  // Sum over the three images of the kite at infinity.
  std::array<RMat, 3> g{m, RMat(m * rho()), RMat(m * rho() * rho())};
  auto folded = [h, g](cplx w, double jac) {
    Sample s{0.0, 0.0};
    for (const auto& gk : g) {
      const cplx v = h(mobius_apply(gk, w)) * (std::norm(mobius_derivative(gk, w)) * jac);
      s.value += v;
      s.mass += std::abs(v);
    }
    return s;
  };
  std::vector<Chart> charts;
  for (int side = 0; side < 2; ++side) {
    const double x0 = side == 0 ? -1.0 : 0.0;
    charts.push_back({[folded, x0, Y](double s, double t) {
                        const double x = x0 + s;
                        const double yl = lower_boundary(x);
                        const double y = yl + t * (Y - yl);
                        return folded(cplx(x, y), Y - yl);
                      },
                      false});
    charts.push_back({[folded, x0, Y](double s, double t) {
                        const double x = x0 + s;
                        const double u = t / Y;
                        const double y = 1.0 / u;
                        return folded(cplx(x, y), y * y / Y);
                      },
                      true});
  }
  return charts;
}

cplx klein_to_upper(cplx k) {
  const double r2 = std::norm(k);
  const cplx w = k / (1.0 + std::sqrt(std::max(0.0, 1.0 - r2)));
  return cplx(0.0, 1.0) * (1.0 + w) / (1.0 - w);
}

cplx upper_to_klein(cplx z) {
  const cplx w = (z - cplx(0.0, 1.0)) / (z + cplx(0.0, 1.0));
  return 2.0 * w / (1.0 + std::norm(w));
}

std::vector<Chart> compact_charts(const Integrand& h, const std::vector<cplx>& vertices) {
  std::vector<cplx> k;
  for (const auto& v : vertices) k.push_back(upper_to_klein(v));
  std::vector<Chart> charts;
  for (std::size_t i = 1; i + 1 < k.size(); ++i) {
    const cplx p0 = k[0], p1 = k[i], p2 = k[i + 1];
    const double area2 = std::abs(((p1 - p0) * std::conj(p2 - p1)).imag());
    charts.push_back({[h, p0, p1, p2, area2](double s, double t) {
                        const cplx kk = p0 + s * (p1 - p0) + s * t * (p2 - p1);
                        const double r2 = std::norm(kk);
                        const cplx z = klein_to_upper(kk);
                        const double dens = z.imag() * z.imag() / std::pow(1.0 - r2, 1.5);
                        const cplx v = h(z) * (dens * s * area2);
                        return Sample{v, std::abs(v)};
                      },
                      false});
  }
  return charts;
}

struct PanelSums {
  cplx value;
  double abs_value;
  cplx tail;
  double tail_abs;
};

PanelSums panel_sum(const Chart& c, int level, long panel, const quad::GaussRule& rule) {
  const long per = 1L << level;
  const long pi = panel / per, pj = panel % per;
  const double hs = 1.0 / static_cast<double>(per);
  cplx v = 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double s = (static_cast<double>(pi) + rule.nodes[i]) * hs;
      const double t = (static_cast<double>(pj) + rule.nodes[j]) * hs;
      const Sample f = c.f(s, t);
      const double w = rule.weights[i] * rule.weights[j] * hs * hs;
      v += f.value * w;
      a += f.mass * w;
    }
  return {v, a, c.tail ? v : cplx(0.0), c.tail ? a : 0.0};
}

PanelSums level_sum(const std::vector<Chart>& charts, int level, const QuadratureOptions& opt) {
  const auto& rule = quad::gauss_legendre(opt.order);
  const long per_chart = 1L << (2 * level);
  const long total = per_chart * static_cast<long>(charts.size());
  std::vector<cplx> vals(static_cast<std::size_t>(total)), tails(static_cast<std::size_t>(total));
  std::vector<double> abss(static_cast<std::size_t>(total)), tabs(static_cast<std::size_t>(total));
  auto work = [&](long idx) {
    const auto r = panel_sum(charts[static_cast<std::size_t>(idx / per_chart)], level, idx % per_chart, rule);
    vals[idx] = r.value;
    abss[idx] = r.abs_value;
    tails[idx] = r.tail;
    tabs[idx] = r.tail_abs;
  };
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long idx = 0; idx < total; ++idx) work(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) work(idx);
  }
  return {quad::pairwise_sum(vals), quad::pairwise_sum(abss), quad::pairwise_sum(tails), quad::pairwise_sum(tabs)};
}

QuadratureResult integrate_charts(const std::vector<Chart>& charts, const QuadratureOptions& opt) {
  QuadratureResult res;
  if (charts.empty()) return res;
  const long evals_per_panel = static_cast<long>(opt.order) * opt.order;
  PanelSums prev = level_sum(charts, 0, opt);
  res.evaluations += evals_per_panel * static_cast<long>(charts.size());
  double diff = 0.0;
  for (int level = 1; level <= opt.max_level; ++level) {
    const PanelSums cur = level_sum(charts, level, opt);
    res.evaluations += evals_per_panel * static_cast<long>(charts.size()) << (2 * level);
    diff = std::abs(cur.value - prev.value);
    const double scale = std::max(std::abs(cur.value), cur.abs_value);
    if (level >= opt.min_level && diff <= opt.tol * scale) {
      res.value = cur.value;
      res.error_estimate = diff;
      res.tail_value = cur.tail;
      res.tail_bound = cur.tail_abs;
      res.levels = level;
      return res;
    }
    prev = cur;
  }
  throw QuadratureFailure("domain quadrature did not converge", diff);
}

}  // namespace

QuadratureResult integrate_domain(const Integrand& h, const FundamentalDomain& domain, const QuadratureOptions& opt) {
  std::vector<Chart> charts;
  if (domain.kind == FundamentalDomain::Kind::compact_polygon) {
    if (domain.vertices.size() < 3) throw FixtureError("compact polygon needs three vertices");
    charts = compact_charts(h, domain.vertices);
  } else {
    const auto& v = domain.ideal_vertices;
    if (v.size() < 3) throw FixtureError("ideal polygon needs three vertices");
    // fan from the vertex at infinity if there is one, else from the first vertex
    std::size_t apex = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].infinite) apex = i;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
      const auto& a = v[(apex + k) % v.size()];
      const auto& b = v[(apex + k + 1) % v.size()];
      const RMat m = ideal_triangle_map(a, b, v[apex]);
      auto part = ideal_triangle_charts(h, m, domain.truncation_height);
      charts.insert(charts.end(), part.begin(), part.end());
    }
  }
  return integrate_charts(charts, opt);
}

QuadratureResult domain_area(const FundamentalDomain& domain, const QuadratureOptions& opt) {
  return integrate_domain([](cplx z) { return cplx(1.0 / (z.imag() * z.imag()), 0.0); }, domain, opt);
}

// ---------------------------------------------------------------- cusp forms

CuspForm parse_cusp_form(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  CuspForm f;
  bool header = false;
  std::map<int, cplx> coeffs;
  int a0_line = 0;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string where = origin + ":" + std::to_string(lineno);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string kw1, kw2, kw3;
      if (!(ls >> kw1 >> f.weight >> kw2 >> f.width >> kw3 >> f.level) || kw1 != "weight" || kw2 != "width" ||
          kw3 != "level")
        throw FixtureError(where + ": expected header 'weight k width h level N tag'");
      ls >> f.tag;
      header = true;
      continue;
    }
    int m = 0;
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(ls >> m >> re >> im) || (ls >> extra))
      throw FixtureError(where + ": malformed coefficient line '" + line + "'");
    if (m < 0) throw FixtureError(where + ": negative index");
    if (coeffs.count(m)) throw FixtureError(where + ": duplicate coefficient a_" + std::to_string(m));
    if (m == 0) a0_line = lineno;
    coeffs[m] = {re, im};
  }
  if (!header) throw FixtureError(origin + ": missing header");
  if (f.weight <= 0 || f.weight % 2 != 0) throw FixtureError(origin + ": only positive even weights are supported");
  if (f.width <= 0) throw FixtureError(origin + ": cusp width must be positive");
  if (auto it = coeffs.find(0); it != coeffs.end() && std::abs(it->second) != 0.0)
    throw FixtureError(origin + ":" + std::to_string(a0_line) + ": not cuspidal, a_0 must vanish");
  const int mmax = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  f.coeffs.assign(static_cast<std::size_t>(std::max(0, mmax)), cplx(0.0));
  for (const auto& [m, c] : coeffs)
    if (m > 0) f.coeffs[static_cast<std::size_t>(m - 1)] = c;
  if (f.truncation() < 10) warn(origin + ": fewer than 10 q-expansion coefficients");
  return f;
}

CuspForm load_cusp_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cusp_form(ss.str(), path);
}

SeriesGrowth series_growth(const CuspForm& f) {
  SeriesGrowth g;
  const int big_m = f.truncation();
  const double half_k = 0.5 * f.weight;
  for (int m = 1; m <= big_m; ++m) {
    const double c = std::abs(f.coeffs[static_cast<std::size_t>(m - 1)]) / std::pow(m, half_k);
    g.body = std::max(g.body, c);
    if (m >= std::max(1, big_m / 2)) g.tail = std::max(g.tail, c);
  }
  return g;
}

namespace {

// Bound on sum_{m > M} A m^{k/2} r^m by a geometric majorant; infinite when it diverges.
double geometric_tail(double a, double half_k, int big_m, double r) {
  if (a == 0.0) return 0.0;
  const double ratio = std::pow((big_m + 2.0) / (big_m + 1.0), half_k) * r;
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return a * std::exp(half_k * std::log(big_m + 1.0) + (big_m + 1.0) * std::log(r)) / (1.0 - ratio);
}

}  // namespace

FormValue eval_series(const CuspForm& f, cplx z, const SeriesGrowth& g) {
  if (z.imag() <= 0.0) throw std::domain_error("cusp form evaluated outside the upper half plane");
  const cplx q = std::exp(cplx(0.0, 2.0 * kPi / f.width) * z);
  const double r = std::abs(q);
  const double half_k = 0.5 * f.weight;
  const int big_m = f.truncation();
  // stop summing once the body majorant is negligible against the first term
  int cut = big_m;
  if (g.body > 0.0) {
    const double floor = 1e-20 * r;
    for (int m = 1; m <= big_m; ++m)
      if (m > 2 && g.body * std::exp(half_k * std::log(m) + (m - 1) * std::log(r)) * r < floor) {
        cut = m - 1;
        break;
      }
  }
  cplx acc = 0.0;
  for (int m = cut; m >= 1; --m) acc = acc * q + f.coeffs[static_cast<std::size_t>(m - 1)];
  FormValue out{acc * q, 0.0};
  if (big_m == 0) return out;
  out.tail_bound = geometric_tail(g.tail, half_k, big_m, r);
  if (cut < big_m) out.tail_bound += geometric_tail(g.body, half_k, cut, r);
  return out;
}

FormValue eval_cusp_form(const CuspForm& f, cplx z, double warn_tol) {
  FormValue v = eval_series(f, z, series_growth(f));
  if (v.tail_bound > warn_tol) {
    static std::atomic<int> warned{0};
    if (warned.fetch_add(1) < 5)
      warn("q-series truncation bound " + std::to_string(v.tail_bound) + " at Im z = " + std::to_string(z.imag()) +
           " exceeds tolerance");
  }
  return v;
}

ModularForm::ModularForm(CuspForm form, const Fixture& fixture, double tol)
    : form_(std::move(form)), growth_(series_growth(form_)), rep_(fixture.rep) {
  measure(fixture, tol);
}

namespace {

// Points where both z and g z sit as high as possible in the half plane.
std::vector<cplx> balanced_points(const RMat& g) {
  const double c = g(1, 0), d = g(1, 1);
  std::vector<cplx> pts;
  if (std::abs(c) < 1e-14) {
    for (double x : {0.0, 0.31, -0.17}) pts.emplace_back(x, 1.0);
    return pts;
  }
  const double x0 = -d / c, y0 = 1.0 / std::abs(c);
  for (double dx : {0.0, 0.13, -0.21}) pts.emplace_back(x0 + dx * y0, y0);
  return pts;
}

}  // namespace

void ModularForm::measure(const Fixture& fixture, double tol) {
  const int k = form_.weight;
  const bool zero = std::all_of(form_.coeffs.begin(), form_.coeffs.end(), [](cplx c) { return c == 0.0; });
  auto multiplier = [&](const RMat& g, double& spread) -> std::optional<cplx> {
    spread = 0.0;
    if (zero) return cplx(1.0);
    std::vector<cplx> found;
    for (const cplx z : balanced_points(g)) {
      const FormValue fz = eval_series(form_, z, growth_);
      const cplx gz = mobius_apply(g, z);
      const FormValue fgz = eval_series(form_, gz, growth_);
      if (std::abs(fz.value) < 1e-8 || fz.tail_bound > 1e-3 * std::abs(fz.value) ||
          fgz.tail_bound > 1e-3 * std::abs(fgz.value))
        continue;
      found.push_back(fgz.value / (std::pow(automorphy(g, z), k) * fz.value));
    }
    if (found.empty()) return std::nullopt;
    spread = 0.0;
    for (const auto& e : found) spread = std::max(spread, std::abs(e - found.front()));
    return found.front();
  };

  for (int i = 0; i < rep_.presentation.generator_count(); ++i) {
    double spread = 0.0;
    const auto e = multiplier(rep_.gens[static_cast<std::size_t>(i)], spread);
    if (!e) throw FixtureError("cannot find sample points to check invariance under " + rep_.presentation.name(i));
    const double resid = std::max(std::abs(*e - 1.0), spread);
    invariance_residual_ = std::max(invariance_residual_, resid);
    if (resid > tol)
      throw FixtureError("form " + form_.tag + " is not invariant under generator " + rep_.presentation.name(i) +
                         " (residual " + std::to_string(resid) + ")");
    moves_.push_back({rep_.gens[static_cast<std::size_t>(i)], 1.0});
    moves_.push_back({inverse2(rep_.gens[static_cast<std::size_t>(i)]), 1.0});
  }
  for (const auto& g : fixture.normalizer) {
    double spread = 0.0;
    const auto e = multiplier(g, spread);
    if (!e) throw FixtureError("cannot measure the multiplier of a normalizer element");
    if (std::abs(std::abs(*e) - 1.0) > tol || spread > tol)
      throw FixtureError("form " + form_.tag + " has an inconsistent multiplier under a normalizer element");
    elems_.push_back(g);
    eps_.push_back(*e);
    if (std::abs(g(1, 0)) < 1e-14) {
      const double tau = g(0, 1) / g(1, 1);
      if (!translation_ || std::abs(tau) < std::abs(tau_)) {
        // canonical form [[1, tau], [0, 1]]; the sign change is invisible in even weight
        translation_ = Move{mat2(1.0, tau, 0.0, 1.0), *e};
        tau_ = tau;
      }
    } else {
      moves_.push_back({g, *e});
      moves_.push_back({inverse2(g), 1.0 / *e});
    }
  }
  for (const auto& g : rep_.gens)
    if (std::abs(g(1, 0)) < 1e-14 && std::abs(g(0, 0) * g(1, 1) - 1.0) < 1e-14) {
      const double tau = g(0, 1) / g(1, 1);
      if (!translation_ || std::abs(tau) < std::abs(tau_)) {
        translation_ = Move{mat2(1.0, tau, 0.0, 1.0), 1.0};
        tau_ = tau;
      }
    }
}

FormValue ModularForm::evaluate(cplx z) const {
  if (z.imag() <= 0.0) throw std::domain_error("cusp form evaluated outside the upper half plane");
  const int k = form_.weight;
  cplx factor = 1.0;  // f(z_original) = factor * f(z)
  for (int iter = 0; iter < 1000; ++iter) {
    if (translation_) {
      const double n = std::round(z.real() / tau_);
      if (n != 0.0) {
        z -= n * tau_;
        // f(z + n tau) = eps^n f(z)
        factor *= std::pow(translation_->eps, n);
      }
    }
    const Move* best = nullptr;
    double best_im = z.imag() * (1.0 + 1e-12);
    for (const auto& mv : moves_) {
      const double im = z.imag() / std::norm(automorphy(mv.m, z));
      if (im > best_im) {
        best_im = im;
        best = &mv;
      }
    }
    if (!best) break;
    // f(z) = f(g z) / (eps (cz + d)^k)
    factor /= best->eps * std::pow(automorphy(best->m, z), k);
    z = mobius_apply(best->m, z);
  }
  FormValue v = eval_series(form_, z, growth_);
  v.value *= factor;
  v.tail_bound *= std::abs(factor);
  return v;
}

double ModularForm::invariance_residual(const std::vector<cplx>& points) const {
  const int k = form_.weight;
  double worst = 0.0;
  for (const auto& g : rep_.gens)
    for (const cplx z : points) {
      const cplx fz = evaluate(z).value;
      const cplx fgz = evaluate(mobius_apply(g, z)).value;
      const cplx pulled = fgz * std::pow(automorphy(g, z), -k);
      worst = std::max(worst, std::abs(pulled - fz) / std::max(std::abs(fz), 1e-300));
    }
  return worst;
}

std::vector<ModularForm> fixture_forms(const Fixture& fixture, int weight) {
  std::vector<ModularForm> out;
  const auto it = fixture.form_files.find(weight);
  if (it == fixture.form_files.end()) return out;
  for (const auto& file : it->second) {
    std::string path = file;
    if (!std::filesystem::exists(path)) path = fixture.directory + "/../forms/" + file;
    out.emplace_back(load_cusp_form(path), fixture);
  }
  return out;
}

}  // namespace operlab::fuchsian
