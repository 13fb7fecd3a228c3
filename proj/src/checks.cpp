#include "operlab/checks.hpp"

#include "operlab/formal_gauge.hpp"
#include "operlab/lie_core.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace operlab::checks {

namespace {

constexpr double kPi = std::numbers::pi;

json optional_number(const std::optional<double>& x) {
  if (!x) return nullptr;
  if (std::isinf(*x)) return "inf";
  if (std::isnan(*x)) return "nan";
  return *x;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  cplx complex(double r) {
    const double re = real(-r, r);
    return {re, real(-r, r)};
  }

 private:
  std::mt19937_64 g_;
};

template <class S>
S random_scalar(Rng& rng) {
  if constexpr (is_exact_v<S>) {
    const int re = rng.integer(-3, 3);
    return QComplex(mpq_class(re), mpq_class(rng.integer(-3, 3)));
  } else {
    return rng.complex(1.0);
  }
}

template <class S>
Matrix<S> random_traceless(Rng& rng, int n) {
  Matrix<S> m = zeros<S>(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = random_scalar<S>(rng);
  m(n - 1, n - 1) -= trace<S>(m);
  return m;
}

// Unimodular integer matrix: product of elementary matrices.
template <class S>
Matrix<S> random_unimodular(Rng& rng, int n) {
  Matrix<S> g = identity<S>(n);
  for (int step = 0; step < 2 * n; ++step) {
    const int a = rng.integer(0, n - 1);
    int b = rng.integer(0, n - 2);
    if (b >= a) ++b;
    Matrix<S> e = identity<S>(n);
    e(a, b) = ScalarOps<S>::from_int(rng.integer(-2, 2));
    g = g * e;
  }
  return g;
}

template <class S>
Matrix<S> unimodular_inverse(const Matrix<S>& g) {
  const auto inv = linalg::inverse<S>(g, is_exact_v<S> ? 0.0 : 1e-12);
  if (!inv) throw std::logic_error("random conjugator is singular");
  return *inv;
}

// Weakly prepared residue: conjugated diagonal with small eigenvalues, or a
// conjugated multiple of the principal nilpotent. Exact mode conjugates by an
// integer unimodular matrix; float mode by a well-conditioned perturbation of
// the identity so that the gauge series stays representable.
template <class S>
lie::LieElement<S> random_residue(Rng& rng, int n, bool nilpotent) {
  const lie::SlAlgebra<S> alg(n);
  Matrix<S> d = zeros<S>(n, n);
  for (;;) {
    if (nilpotent) {
      d = lie::principal_triple<S>(n).q_minus.matrix();
      if constexpr (!is_exact_v<S>) d *= rng.real(0.2, 1.0);
    } else {
      S sum = ScalarOps<S>::from_int(0);
      for (int i = 0; i + 1 < n; ++i) {
        if constexpr (is_exact_v<S>) {
          const int re = rng.integer(-2, 2);
          d(i, i) = QComplex(mpq_class(re) / 7, mpq_class(rng.integer(-2, 2)) / 11);
        } else {
          const double re = rng.real(-0.3, 0.3);
          d(i, i) = cplx(re, rng.real(-0.2, 0.2));
        }
        sum += d(i, i);
      }
      d(n - 1, n - 1) = -sum;
    }
    // triangular, so the exact eigenvalue path applies; the property is conjugation invariant
    if (gauge::is_weakly_prepared(lie::LieElement<S>(alg, d))) break;
  }
  Matrix<S> g;
  if constexpr (is_exact_v<S>) {
    g = random_unimodular<S>(rng, n);
  } else {
    g = CMat::Identity(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g(a, b) += 0.3 * rng.complex(1.0);
  }
  return {alg, Matrix<S>(g * d * unimodular_inverse<S>(g))};
}

template <class S>
double connection_distance(const gauge::FormalConnection<S>& a, const lie::LieElement<S>& v0, int upto) {
  double worst = 0.0;
  for (int k = 0; k <= upto; ++k) {
    const Matrix<S> target = k == 0 ? v0.matrix() : zeros<S>(v0.n(), v0.n());
    worst = std::max(worst, max_abs<S>(Matrix<S>(a.coeffs[static_cast<std::size_t>(k)].matrix() - target)));
  }
  return worst;
}

template <class S>
json connection_json(const gauge::FormalConnection<S>& c) {
  return io::connection_to_json<S>(c);
}

template <class S>
json gauge_json(const gauge::GaugeSeries<S>& h) {
  json out = json::array();
  for (const auto& c : h.coeffs) out.push_back(io::matrix_to_json(c));
  return out;
}

}  // namespace

// --------------------------------------------------------------- records

json Check::to_json() const {
  json j;
  j["name"] = name;
  j["value"] = value;
  j["tolerance"] = tolerance;
  j["verdict"] = pairing::verdict_name(verdict);
  if (residual) j["residual"] = optional_number(residual);
  if (gap) j["gap"] = optional_number(gap);
  return j;
}

Check bound(std::string name, double residual, double tol) {
  Check c;
  c.name = std::move(name);
  c.value = optional_number(residual);
  c.tolerance = tol;
  c.residual = residual;
  c.verdict = residual <= tol ? Verdict::pass : Verdict::fail;
  return c;
}

Check exceeds(std::string name, double value, double floor) {
  Check c;
  c.name = std::move(name);
  c.value = optional_number(value);
  c.tolerance = floor;
  c.verdict = value > floor ? Verdict::pass : Verdict::fail;
  return c;
}

Check dimension(std::string name, long measured, long expected, double gap, double min_gap) {
  Check c;
  c.name = std::move(name);
  c.value = {{"measured", measured}, {"expected", expected}};
  c.tolerance = min_gap;
  c.gap = gap;
  if (measured != expected)
    c.verdict = gap < min_gap ? Verdict::inconclusive : Verdict::fail;
  else
    c.verdict = gap < min_gap ? Verdict::inconclusive : Verdict::pass;
  return c;
}

Verdict Outcome::verdict() const {
  std::vector<Verdict> vs;
  for (const auto& c : checks) vs.push_back(c.verdict);
  return pairing::combine(vs);
}

void Outcome::append(const Outcome& o, const std::string& prefix) {
  for (auto c : o.checks) {
    c.name = prefix + "." + c.name;
    checks.push_back(std::move(c));
  }
  data[prefix] = o.data;
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw io::ConfigError("mode must be exact or float, got '" + s + "'");
}

const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

std::string ModuleSpec::label() const {
  return kind == Kind::adjoint ? "adjoint_sl" + std::to_string(n) : "V" + std::to_string(2 * j);
}

int expected_h1p_dim(int g, int r, const ModuleSpec& m) {
  auto piece = [&](int j) { return 2 * std::max(0, (2 * j + 1) * (g - 1) + j * r); };
  if (m.kind == ModuleSpec::Kind::sym) return piece(m.j);
  int total = 0;
  for (int j = 1; j < m.n; ++j) total += piece(j);
  return total;
}

// ------------------------------------------------------------------- lie

namespace {

template <class S>
Outcome lie_triple_impl(int n, double tol) {
  const auto t = lie::principal_triple<S>(n);
  auto res = [](const lie::LieElement<S>& a, const lie::LieElement<S>& b) {
    return max_abs<S>(Matrix<S>(a.matrix() - b.matrix()));
  };
  const S two = ScalarOps<S>::from_int(2), mtwo = ScalarOps<S>::from_int(-2);
  Outcome o;
  o.add(bound("bracket_h_qplus", res(lie::bracket(t.h, t.q_plus), t.q_plus.scaled(two)), tol));
  o.add(bound("bracket_h_qminus", res(lie::bracket(t.h, t.q_minus), t.q_minus.scaled(mtwo)), tol));
  o.add(bound("bracket_qplus_qminus", res(lie::bracket(t.q_plus, t.q_minus), t.h), tol));
  o.data["N"] = n;
  if constexpr (is_exact_v<S>) {
    o.data["q_minus"] = io::matrix_to_json(t.q_minus.matrix());
    o.data["h"] = io::matrix_to_json(t.h.matrix());
    o.data["q_plus"] = io::matrix_to_json(t.q_plus.matrix());
  } else {
    o.data["q_minus"] = io::matrix_to_json(CMat(t.q_minus.matrix()));
    o.data["h"] = io::matrix_to_json(CMat(t.h.matrix()));
    o.data["q_plus"] = io::matrix_to_json(CMat(t.q_plus.matrix()));
  }
  return o;
}

template <class S>
Outcome lie_identity_impl(int n, double tol, std::uint64_t seed) {
  Rng rng(seed);
  const auto t = lie::principal_triple<S>(n);
  auto scale = [&]() {
    int a = 0;
    while (a == 0) a = rng.integer(-5, 5);
    const int den = rng.integer(1, 4);
    const int im = rng.integer(-2, 2);
    if constexpr (is_exact_v<S>)
      return QComplex(mpq_class(a) / den, mpq_class(im));
    else
      return cplx(a / static_cast<double>(den), im);
  };
  double worst = 0.0;
  long count = 0, failures = 0;
  std::vector<lie::LieElement<S>> basis;
  for (int j = 1; j < n; ++j) basis.push_back(*lie::invariants_basis(t, j));
  // powers[l] = ad(q_-)^l v
  auto powers = [&](const lie::LieElement<S>& v, int count) {
    std::vector<lie::LieElement<S>> out{v};
    for (int l = 1; l < count; ++l) out.push_back(lie::ad_power(t.q_minus, out.back(), 1));
    return out;
  };
  for (int j = 1; j < n; ++j)
    for (int jp = 1; jp < n; ++jp) {
      const auto vj = basis[j - 1].scaled(scale());
      const auto vjp = basis[jp - 1].scaled(scale());
      const auto a = powers(vj, 2 * j + 1);
      const auto b = powers(vjp.conj(), 2 * jp + 1);
      for (int l = 0; l <= 2 * j; ++l)
        for (int lp = 0; lp <= 2 * jp; ++lp) {
          const auto r = lie::killing_identity_from_powers(t, j, l, jp, lp, vj, vjp, a[l], b[lp], tol);
          worst = std::max(worst, r.residual / r.scale);
          ++count;
          if (!r.pass) ++failures;
        }
    }
  Outcome o;
  Check c = bound("killing_adpower_identity", worst, tol);
  c.value = {{"cases", count}, {"failures", failures}, {"max_relative_residual", worst}};
  if (failures > 0) c.verdict = Verdict::fail;
  o.add(std::move(c));
  o.data["N"] = n;
  o.data["cases"] = count;
  return o;
}

}  // namespace

Outcome lie_triple(int n, Mode mode, double tol) {
  return mode == Mode::exact ? lie_triple_impl<QComplex>(n, 0.0) : lie_triple_impl<cplx>(n, tol);
}

Outcome lie_identity(int n, Mode mode, double tol, std::uint64_t seed) {
  return mode == Mode::exact ? lie_identity_impl<QComplex>(n, 0.0, seed) : lie_identity_impl<cplx>(n, tol, seed);
}

// ----------------------------------------------------------------- gauge

namespace {

template <class S>
gauge::FormalConnection<S> random_connection(Rng& rng, int n, int order, bool nilpotent) {
  auto v0 = random_residue<S>(rng, n, nilpotent);
  gauge::FormalConnection<S> v{{v0}, true};
  for (int k = 1; k <= order; ++k) v.coeffs.emplace_back(v0.algebra(), random_traceless<S>(rng, n));
  return v;
}

struct NormalizationError {
  double absolute = 0.0;
  double relative = 0.0;  ///< absolute / max(1, |h| |v|), the size of the terms that cancel
};

template <class S>
NormalizationError normalization_residual(const gauge::FormalConnection<S>& v, double tol,
                                          gauge::NormalizeResult<S>* keep) {
  auto r = gauge::normalize(v, tol);
  const auto w = gauge::gauge_transform(r.gauge, v, tol);
  NormalizationError e;
  e.absolute = connection_distance(w, r.normal_form, v.order());
  double hmax = 0.0, vmax = 0.0;
  for (const auto& c : r.gauge.coeffs) hmax = std::max(hmax, max_abs<S>(c));
  for (const auto& c : v.coeffs) vmax = std::max(vmax, max_abs<S>(c.matrix()));
  e.relative = e.absolute / std::max(1.0, hmax * vmax);
  if (keep) *keep = std::move(r);
  return e;
}

template <class S>
Outcome gauge_random_impl(const GaugeOptions& opt) {
  Rng rng(opt.seed);
  const double tol = is_exact_v<S> ? 0.0 : opt.tol;
  double worst = 0.0, worst_rel = 0.0;
  int nilpotent = 0;
  for (int s = 0; s < opt.samples; ++s) {
    const bool nil = s % 5 == 4;
    nilpotent += nil;
    const auto v = random_connection<S>(rng, opt.n, opt.order, nil);
    const auto e = normalization_residual<S>(v, is_exact_v<S> ? 0.0 : 1e-12, nullptr);
    worst = std::max(worst, e.absolute);
    worst_rel = std::max(worst_rel, e.relative);
  }
  Outcome o;
  Check c = bound("normalization_residual", worst, tol);
  c.value = {{"samples", opt.samples},
             {"nilpotent_samples", nilpotent},
             {"max_residual", worst},
             {"max_relative_residual", worst_rel}};
  o.add(std::move(c));
  o.data["N"] = opt.n;
  o.data["order"] = opt.order;
  return o;
}

template <class S>
Outcome gauge_file_impl(const json& conn, const GaugeOptions& opt) {
  auto v = io::connection_from_json<S>(conn);
  if (!v.logarithmic) throw io::ConfigError("gauge normalize needs a logarithmic connection");
  if (opt.order < v.order()) v.coeffs.erase(v.coeffs.begin() + opt.order + 1, v.coeffs.end());
  if (opt.order > v.order())
    while (v.order() < opt.order) v.coeffs.push_back(lie::LieElement<S>::zero(v.algebra()));
  Outcome o;
  const bool prepared = gauge::is_weakly_prepared(v.coeffs.front());
  Check pc;
  pc.name = "weakly_prepared";
  pc.value = prepared;
  pc.verdict = prepared ? Verdict::pass : Verdict::fail;
  o.add(pc);
  o.data["N"] = v.algebra().n();
  o.data["order"] = v.order();
  if (!prepared) return o;
  gauge::NormalizeResult<S> r{gauge::GaugeSeries<S>::identity(v.algebra().n(), v.order()), v.coeffs.front()};
  const auto e = normalization_residual<S>(v, is_exact_v<S> ? 0.0 : 1e-12, &r);
  Check c = bound("normalization_residual", e.absolute, is_exact_v<S> ? 0.0 : opt.tol);
  c.value = {{"residual", e.absolute}, {"relative_residual", e.relative}};
  o.add(std::move(c));
  o.data["normal_form"] = connection_json(gauge::FormalConnection<S>::constant(r.normal_form, 0));
  o.data["gauge"] = gauge_json(r.gauge);
  o.data["local_monodromy"] = io::matrix_to_json(gauge::local_monodromy(r.normal_form));
  return o;
}

}  // namespace

Outcome gauge_random(const GaugeOptions& opt) {
  return opt.mode == Mode::exact ? gauge_random_impl<QComplex>(opt) : gauge_random_impl<cplx>(opt);
}

Outcome gauge_file(const json& connection, const GaugeOptions& opt) {
  return opt.mode == Mode::exact ? gauge_file_impl<QComplex>(connection, opt) : gauge_file_impl<cplx>(connection, opt);
}

// ------------------------------------------------------------- monodromy

namespace {

// Largest relative mismatch between two eigenvalue multisets, greedy matching.
double multiset_error(const CVec& a, const CVec& b) {
  double worst = 0.0;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index pick = -1;
    for (Eigen::Index k = 0; k < b.size(); ++k)
      if (!used[static_cast<std::size_t>(k)] && std::abs(a(i) - b(k)) < best) best = std::abs(a(i) - b(k)), pick = k;
    if (pick < 0) return std::numeric_limits<double>::infinity();
    used[static_cast<std::size_t>(pick)] = true;
    worst = std::max(worst, best / std::max(1.0, std::abs(a(i))));
  }
  return worst;
}

double unipotency(const CMat& m) {
  const auto n = m.rows();
  const CMat d = m - CMat::Identity(n, n);
  CMat p = CMat::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) p = p * d;
  return p.norm();
}

CVec expected_eigenvalues(const CMat& residue, int turns) {
  return (gauge::eigenvalues(residue) * cplx(0.0, -2 * kPi * turns)).array().exp().matrix();
}

// Eigenvalue or unipotency check for a loop around one pole with the given residue.
void local_checks(Outcome& o, const std::string& prefix, const CMat& m, const CMat& residue, int turns,
                  const MonodromyOptions& opt) {
  const lie::LieElement<cplx> c(lie::SlAlgebra<cplx>(static_cast<int>(residue.rows())), residue, 1e-9);
  if (gauge::is_zero_radius(c)) {
    o.add(bound(prefix + "unipotent", unipotency(m), opt.unipotent_tol));
  } else if (gauge::is_weakly_prepared(c)) {
    o.add(bound(prefix + "eigenvalues", multiset_error(gauge::eigenvalues(m), expected_eigenvalues(residue, turns)),
                opt.tol));
  }
}

json eigen_json(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(io::complex_to_json(v(i)));
  return out;
}

}  // namespace

LoopSpec loop_from_json(const json& j) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw io::ConfigError("loop must be an object with center and radius");
  LoopSpec l;
  l.center = io::complex_from_json(j.at("center"));
  l.radius = j.at("radius").get<double>();
  l.turns = j.value("turns", 1);
  if (!(l.radius > 0.0)) throw io::ConfigError("loop radius must be positive");
  if (l.turns == 0) throw io::ConfigError("loop must wind at least once");
  return l;
}

Outcome monodromy_system(const ode::MeromorphicSystem& sys, const std::optional<LoopSpec>& loop,
                         const MonodromyOptions& opt) {
  sys.validate();
  Outcome o;
  o.data["N"] = sys.n();
  if (loop) {
    const auto path = ode::PathSpec::circle(loop->center, std::abs(loop->radius), std::abs(loop->turns), loop->turns > 0);
    const CMat m = ode::loop_monodromy(sys, path, opt.ode_tol);
    std::vector<std::size_t> inside;
    cplx trace_sum = 0.0;
    for (std::size_t i = 0; i < sys.poles.size(); ++i)
      if (std::abs(sys.poles[i] - loop->center) < loop->radius) {
        inside.push_back(i);
        trace_sum += sys.residues[i].trace();
      }
    const cplx det_expected = std::exp(cplx(0.0, -2 * kPi * loop->turns) * trace_sum);
    o.add(bound("determinant", std::abs(m.determinant() - det_expected) / std::max(1.0, std::abs(det_expected)), opt.tol));
    if (inside.size() == 1) local_checks(o, "", m, sys.residues[inside.front()], loop->turns, opt);
    o.data["enclosed_poles"] = inside;
    o.data["monodromy"] = io::matrix_to_json(m);
    o.data["eigenvalues"] = eigen_json(gauge::eigenvalues(m));
    return o;
  }
  json locals = json::array();
  for (std::size_t i = 0; i < sys.poles.size(); ++i) {
    double radius = 1.0;
    for (std::size_t k = 0; k < sys.poles.size(); ++k)
      if (k != i) radius = std::min(radius, 0.5 * std::abs(sys.poles[k] - sys.poles[i]));
    const CMat m = ode::local_monodromy_numeric(sys, sys.poles[i], radius, opt.ode_tol);
    local_checks(o, "pole" + std::to_string(i) + ".", m, sys.residues[i], 1, opt);
    locals.push_back({{"pole", io::complex_to_json(sys.poles[i])},
                      {"radius", radius},
                      {"monodromy", io::matrix_to_json(m)},
                      {"eigenvalues", eigen_json(gauge::eigenvalues(m))}});
  }
  o.data["local"] = locals;
  return o;
}

Outcome monodromy_random(const MonodromyOptions& opt) {
  Rng rng(opt.seed);
  Outcome o;
  const int nilpotent = std::max(1, opt.samples / 4);
  for (int n = 2; n <= 3; ++n) {
    double eig = 0.0, uni = 0.0;
    for (int s = 0; s < opt.samples + nilpotent; ++s) {
      const bool nil = s >= opt.samples;
      CMat c;
      do {
        CMat d = CMat::Zero(n, n);
        if (nil) {
          d = lie::principal_triple<cplx>(n).q_minus.matrix() * rng.real(0.2, 1.0);
        } else {
          cplx sum = 0.0;
          for (int i = 0; i + 1 < n; ++i) {
            const double re = rng.real(-0.3, 0.3);
            d(i, i) = cplx(re, rng.real(-0.2, 0.2));
            sum += d(i, i);
          }
          d(n - 1, n - 1) = -sum;
        }
        CMat g = CMat::Identity(n, n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) g(a, b) += 0.3 * rng.complex(1.0);
        c = g * d * g.inverse();
      } while (!nil && !gauge::is_weakly_prepared(lie::LieElement<cplx>(lie::SlAlgebra<cplx>(n), c, 1e-9)));
      ode::MeromorphicSystem sys{{0.0}, {c}, {}};
      for (int k = 0; k < 3; ++k) sys.poly.push_back(0.3 * random_traceless<cplx>(rng, n));
      const CMat m = ode::local_monodromy_numeric(sys, 0.0, 0.4, opt.ode_tol);
      if (nil)
        uni = std::max(uni, unipotency(m));
      else
        eig = std::max(eig, multiset_error(gauge::eigenvalues(m), expected_eigenvalues(c, 1)));
    }
    const std::string tag = "sl" + std::to_string(n);
    Check ce = bound(tag + ".eigenvalues", eig, opt.tol);
    ce.value = {{"systems", opt.samples}, {"max_relative_error", eig}};
    o.add(std::move(ce));
    Check cu = bound(tag + ".unipotent", uni, opt.unipotent_tol);
    cu.value = {{"systems", nilpotent}, {"max_norm", uni}};
    o.add(std::move(cu));
  }
  return o;
}

// ------------------------------------------------------------ cohomology

Outcome cohomology(const surface::GroupRepresentation& rep, const ModuleSpec& m, const RankOptions& opt,
                   bool with_basis) {
  rep.validate();
  const auto act = m.kind == ModuleSpec::Kind::adjoint ? surface::adjoint_action<double>(rep, m.n)
                                                       : surface::sym_module<double>(rep, m.j);
  act.check_consistent();
  const auto coh = surface::h1p_basis(act, opt.rank_tol);
  const auto& p = rep.presentation;
  Outcome o;
  o.add(dimension("h1p_dim", coh.h1p_dim(), expected_h1p_dim(p.g, p.r, m), coh.min_gap(), opt.min_gap));
  auto space = [](int dim, double gap) { return json{{"dim", dim}, {"gap", optional_number(gap)}}; };
  o.data["module"] = m.label();
  o.data["g"] = p.g;
  o.data["r"] = p.r;
  o.data["rank_tol"] = opt.rank_tol;
  o.data["Z1"] = space(coh.z1.dim(), coh.z1.rank.gap);
  o.data["Z1_P"] = space(coh.z1p.dim(), coh.z1p.rank.gap);
  o.data["B1"] = space(coh.b1.dim(), coh.b1.rank.gap);
  o.data["H1_P"] = space(coh.h1p_dim(), coh.h1p_rank.gap);
  if (with_basis) {
    json cols = json::array();
    for (Eigen::Index c = 0; c < coh.h1p.cols(); ++c) {
      json col = json::array();
      for (Eigen::Index r = 0; r < coh.h1p.rows(); ++r) col.push_back(coh.h1p(r, c));
      cols.push_back(col);
    }
    o.data["generators"] = json::array();
    for (int g = 0; g < p.generator_count(); ++g) o.data["generators"].push_back(p.name(g));
    o.data["basis"] = cols;
  }
  return o;
}

// ---------------------------------------------------------------- domain

Outcome domain_area(const fuchsian::Fixture& fx, const fuchsian::QuadratureOptions& opt, double tol) {
  const auto r = fuchsian::domain_area(fx.domain, opt);
  const auto& p = fx.rep.presentation;
  const double gauss_bonnet = 2 * kPi * (2 * p.g - 2 + p.r);
  const double area = r.value.real();
  Outcome o;
  o.add(bound("area_vs_gauss_bonnet", std::abs(area - gauss_bonnet) / gauss_bonnet, tol));
  if (fx.domain.expected_area > 0)
    o.add(bound("area_vs_fixture", std::abs(area - fx.domain.expected_area) / fx.domain.expected_area, tol));
  o.data["area"] = area;
  o.data["area_over_pi"] = area / kPi;
  o.data["error_estimate"] = r.error_estimate;
  o.data["levels"] = r.levels;
  o.data["evaluations"] = r.evaluations;
  return o;
}

// -------------------------------------------------------- eichler-shimura

namespace {

json vector_json(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(io::complex_to_json(v(i)));
  return out;
}

std::vector<fuchsian::ModularForm> forms_of_weight(const fuchsian::Fixture& fx, int weight) {
  return fuchsian::fixture_forms(fx, weight);
}

}  // namespace

Outcome es_cocycle(const fuchsian::Fixture& fx, const fuchsian::ModularForm& f, int j, const ESCheckOptions& opt) {
  if (f.weight() != 2 * j + 2)
    throw io::ConfigError("form weight " + std::to_string(f.weight()) + " does not match j = " + std::to_string(j));
  // residuals are judged here rather than thrown
  es::ESConfig cfg = opt.cfg;
  cfg.check_tol = std::numeric_limits<double>::infinity();
  const auto z = es::es_cocycle(f, fx, j, cfg);
  Outcome o;
  o.add(bound("relator_residual", z.relator_residual, opt.residual_tol));
  o.add(bound("parabolicity_residual", z.parabolicity_residual, opt.residual_tol));

  es::ESConfig alt = cfg;
  alt.base_point = opt.alt_base_point;
  const auto z2 = es::es_cocycle(f, fx, j, alt);
  const auto coh = surface::h1p_basis(surface::sym_module<cplx>(fx.rep, j));
  const CVec diff = coh.h1p.adjoint() * (z2.values - z.values);
  o.add(bound("base_point_independence", diff.norm() / std::max(1.0, z.values.norm()), opt.basepoint_tol));

  const auto& p = fx.rep.presentation;
  o.data["form"] = f.form().tag;
  o.data["weight"] = f.weight();
  o.data["j"] = j;
  o.data["base_point"] = io::complex_to_json(cfg.base_point);
  o.data["alt_base_point"] = io::complex_to_json(opt.alt_base_point);
  o.data["quadrature_tol"] = cfg.tol;
  json values = json::object();
  for (int g = 0; g < p.generator_count(); ++g) values[p.name(g)] = vector_json(z.value(g));
  o.data["values"] = values;
  o.data["class_coords"] = vector_json(coh.h1p.adjoint() * z.values);
  return o;
}

Outcome decomposition(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg, double rank_tol) {
  const auto forms = forms_of_weight(fx, 2 * j + 2);
  const auto& p = fx.rep.presentation;
  const int expected = expected_h1p_dim(p.g, p.r, {ModuleSpec::Kind::sym, 2, j});
  Outcome o;
  o.data["j"] = j;
  o.data["forms"] = forms.size();
  o.data["rank_tol"] = rank_tol;
  try {
    const auto r = es::decomposition_check(forms, fx, j, cfg, rank_tol);
    const double gap = r.min_ratio / rank_tol;
    o.add(dimension("h1p_dim", r.h1p_dim, expected, std::numeric_limits<double>::infinity(), 0.0));
    o.add(dimension("rank", r.rank, r.h1p_dim, gap, 1.0));
    o.data["rank"] = r.rank;
    o.data["min_ratio"] = r.min_ratio;
    json sv = json::array();
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) sv.push_back(r.singular_values(i));
    o.data["singular_values"] = sv;
  } catch (const es::DecompositionFailure& e) {
    Check c;
    c.name = "rank";
    c.value = {{"measured", e.rank}, {"expected", e.expected}};
    c.tolerance = rank_tol;
    c.verdict = Verdict::fail;
    o.add(std::move(c));
  }
  return o;
}

// --------------------------------------------------------------- pairing

namespace {

pairing::PairingModule<cplx> complex_module(const surface::GroupRepresentation& rep, const ModuleSpec& m) {
  return m.kind == ModuleSpec::Kind::adjoint ? pairing::adjoint_pairing_module<cplx>(rep, m.n)
                                             : pairing::sym_pairing_module<cplx>(rep, m.j);
}

pairing::PairingModule<double> real_module(const surface::GroupRepresentation& rep, const ModuleSpec& m) {
  return m.kind == ModuleSpec::Kind::adjoint ? pairing::adjoint_pairing_module<double>(rep, m.n)
                                             : pairing::sym_pairing_module<double>(rep, m.j);
}

CVec random_vector(Rng& rng, Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex(1.0);
  return v;
}

}  // namespace

std::string gram_csv(const std::vector<std::string>& labels, const RMat& gram) {
  std::ostringstream out;
  out.precision(17);
  out << "label";
  for (const auto& l : labels) out << "," << l;
  out << "\n";
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    out << labels[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < gram.cols(); ++c) out << "," << gram(r, c);
    out << "\n";
  }
  return out.str();
}

Outcome pairing_gram(const fuchsian::Fixture& fx, const ModuleSpec& m, const PairingOptions& opt) {
  const auto cmod = complex_module(fx.rep, m);
  const auto rmod = real_module(fx.rep, m);
  const auto coh = surface::h1p_basis(rmod.act);
  const CMat basis = coh.h1p.cast<cplx>();
  const auto k = basis.cols();
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < k; ++a) labels.push_back("h" + std::to_string(a));
  const CMat g = pairing::goldman_gram(cmod, basis);

  double scale = 1e-300, skew = 0.0, imag = 0.0, iso = 0.0;
  for (Eigen::Index a = 0; a < k; ++a) {
    const CVec va = basis.col(a);
    for (Eigen::Index b = 0; b < k; ++b) {
      const CVec vb = basis.col(b);
      const double sc = pairing::goldman_rounding_scale(cmod, va, vb) + pairing::goldman_rounding_scale(cmod, vb, va);
      scale = std::max(scale, sc);
      skew = std::max(skew, std::abs(g(a, b) + g(b, a)) / sc);
      imag = std::max(imag, std::abs(g(a, b).imag()) / sc);
    }
    iso = std::max(iso, std::abs(pairing::hermitian_pairing(cmod, va, va)) / pairing::goldman_rounding_scale(cmod, va, va));
  }

  Rng rng(opt.seed);
  const CMat z = coh.z1p.basis.cast<cplx>();
  const CMat cob = surface::coboundary_map(cmod.act);
  double skew_random = 0.0, cob_random = 0.0;
  if (z.cols() > 0)
    for (int s = 0; s < opt.samples; ++s) {
      const CVec a = z * random_vector(rng, z.cols());
      const CVec b = z * random_vector(rng, z.cols());
      const CVec dx = cob * random_vector(rng, cmod.act.dim);
      const double sab = pairing::goldman_rounding_scale(cmod, a, b) + pairing::goldman_rounding_scale(cmod, b, a);
      skew_random = std::max(skew_random, std::abs(pairing::goldman_pairing(cmod, a, b) + pairing::goldman_pairing(cmod, b, a)) / sab);
      cob_random = std::max(cob_random, std::abs(pairing::goldman_pairing(cmod, a, dx)) / pairing::goldman_rounding_scale(cmod, a, dx));
      cob_random = std::max(cob_random, std::abs(pairing::goldman_pairing(cmod, dx, a)) / pairing::goldman_rounding_scale(cmod, dx, a));
    }

  const auto rep = pairing::make_gram_report(g, pairing::GramReport::Symmetry::skew, labels, opt.nondegeneracy_ratio);
  Outcome o;
  o.add(bound("skew_symmetry", std::max(skew, skew_random), opt.skew_tol));
  o.add(bound("coboundary_annihilation", cob_random, opt.coboundary_tol));
  o.add(bound("real_isotropy", iso, opt.isotropy_tol));
  o.add(bound("real_output", imag, opt.skew_tol));
  Check nd;
  nd.name = "nondegenerate";
  nd.value = rep.condition_ratio;
  nd.tolerance = opt.nondegeneracy_ratio;
  nd.verdict = k == 0 ? Verdict::pass : rep.nondegenerate;
  o.add(std::move(nd));

  o.data["module"] = m.label();
  o.data["h1p_dim"] = k;
  o.data["residual_scale"] = "relative to the rounding scale of the cup-product sum";
  o.data["rounding_scale"] = scale;
  o.data["random_pairs"] = opt.samples;
  json sv = json::array();
  for (Eigen::Index i = 0; i < rep.singular_values.size(); ++i) sv.push_back(rep.singular_values(i));
  o.data["singular_values"] = sv;
  o.data["labels"] = labels;
  o.csv = gram_csv(labels, g.real());
  return o;
}

Outcome pairing_positivity(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg,
                           const fuchsian::QuadratureOptions& qopt) {
  const auto forms = forms_of_weight(fx, 2 * j + 2);
  const auto mod = pairing::sym_pairing_module<cplx>(fx.rep, j);
  Outcome o;
  o.data["forms"] = forms.size();
  if (forms.empty()) return o;
  CMat cocycles(static_cast<Eigen::Index>(mod.act.presentation.generator_count()) * mod.act.dim,
                static_cast<Eigen::Index>(forms.size()));
  for (std::size_t k = 0; k < forms.size(); ++k)
    cocycles.col(static_cast<Eigen::Index>(k)) = es::es_cocycle(forms[k], fx, j, cfg).values;
  const CMat h = pairing::hermitian_gram(mod, cocycles);
  const auto rep = pairing::make_gram_report(h, pairing::GramReport::Symmetry::hermitian, {});
  Check pd;
  pd.name = "hermitian_positive_definite";
  const double margin = rep.eigenvalues.size() ? rep.eigenvalues.minCoeff() : 0.0;
  pd.value = {{"min_eigenvalue", margin}, {"hermitian_residual", rep.symmetry_residual}};
  pd.tolerance = 0.0;
  pd.verdict = rep.positive_definite;
  o.add(std::move(pd));
  json norms = json::array();
  for (std::size_t k = 0; k < forms.size(); ++k) {
    const cplx pk = pairing::petersson_integral(forms[k], forms[k], j, fx.domain, {}, qopt);
    Check c = exceeds("petersson_positive." + forms[k].form().tag, pk.real(), 0.0);
    c.value = io::complex_to_json(pk);
    if (std::abs(pk.imag()) > 1e-6 * std::abs(pk)) c.verdict = Verdict::fail;
    o.add(std::move(c));
    norms.push_back(io::complex_to_json(pk));
  }
  json ev = json::array();
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) ev.push_back(rep.eigenvalues(i));
  o.data["hermitian_eigenvalues"] = ev;
  o.data["petersson_norms"] = norms;
  return o;
}

Outcome cross_validate(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg,
                       const fuchsian::QuadratureOptions& qopt, double threshold) {
  const auto forms = forms_of_weight(fx, 2 * j + 2);
  const auto cv = pairing::cross_validate(forms, fx, j, cfg, qopt, threshold);
  Outcome o;
  Check c = bound("proportionality_residual", cv.residual, threshold);
  c.verdict = cv.verdict;
  o.add(std::move(c));
  if (!forms.empty()) o.add(exceeds("constant_positive", cv.constant.real(), 0.0));
  o.data["forms"] = forms.size();
  o.data["constant"] = io::complex_to_json(cv.constant);
  o.data["cocycle_gram"] = io::matrix_to_json(cv.cocycle_gram);
  o.data["petersson_gram"] = io::matrix_to_json(cv.petersson_gram);
  return o;
}

Outcome transversality(const fuchsian::Fixture& fx, int n, const es::ESConfig& cfg, const RankOptions& opt,
                       bool synthetic) {
  const auto rmod = pairing::adjoint_pairing_module<double>(fx.rep, n);
  const auto cmod = pairing::adjoint_pairing_module<cplx>(fx.rep, n);
  CMat holo;
  if (synthetic)
    holo = surface::h1p_basis(rmod.act, opt.rank_tol).h1p.leftCols(1).cast<cplx>();
  else
    holo = pairing::holomorphic_adjoint_cocycles(fx, n, cfg);
  const auto r = pairing::transversality_check(rmod, cmod, holo, opt.rank_tol, opt.min_gap);
  Outcome o;
  Check c;
  c.name = synthetic ? "stacked_rank_synthetic" : "stacked_rank";
  c.value = {{"rank", r.stacked_rank}, {"columns", r.real_dim + 2 * r.holo_dim}, {"ambient", 2 * r.complex_dim}};
  c.tolerance = opt.min_gap;
  c.gap = r.gap;
  c.verdict = r.verdict;
  o.add(std::move(c));
  const auto& p = fx.rep.presentation;
  o.data["N"] = n;
  o.data["synthetic"] = synthetic;
  o.data["rank_tol"] = opt.rank_tol;
  o.data["complex_dim"] = r.complex_dim;
  o.data["expected_dim"] = expected_h1p_dim(p.g, p.r, {ModuleSpec::Kind::adjoint, n, 1});
  o.data["real_dim"] = r.real_dim;
  o.data["holo_dim"] = r.holo_dim;
  o.data["ambient_gap"] = optional_number(r.ambient_gap);
  json sv = json::array();
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) sv.push_back(r.singular_values(i));
  o.data["singular_values"] = sv;
  return o;
}

Outcome hodge(const fuchsian::Fixture& fx, int j, const es::ESConfig& cfg, double tol) {
  const auto forms = forms_of_weight(fx, 2 * j + 2);
  const auto r = pairing::hodge_report(forms, fx, j, cfg, tol);
  Outcome o;
  for (const auto& a : r.axioms) {
    Check c;
    c.name = a.name;
    c.value = {{"residual", a.residual}, {"margin", a.margin}};
    c.tolerance = tol;
    c.residual = a.residual;
    c.verdict = a.verdict;
    o.add(std::move(c));
  }
  o.data["weight"] = r.weight;
  o.data["h10"] = r.h10;
  o.data["h01"] = r.h01;
  o.data["polarization"] = io::matrix_to_json(r.polarization);
  return o;
}

}  // namespace operlab::checks
