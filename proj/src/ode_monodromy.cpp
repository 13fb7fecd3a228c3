#include "operlab/ode_monodromy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace operlab::ode {

namespace {

constexpr double kPi = std::numbers::pi;

cplx seg_point(const Segment& seg, double s) {
  if (const auto* l = std::get_if<LineSegment>(&seg)) return l->from + s * (l->to - l->from);
  const auto& a = std::get<ArcSegment>(seg);
  return a.center + a.radius * std::exp(cplx(0.0, a.start_angle + s * a.sweep));
}

cplx seg_velocity(const Segment& seg, double s) {
  if (const auto* l = std::get_if<LineSegment>(&seg)) return l->to - l->from;
  const auto& a = std::get<ArcSegment>(seg);
  return cplx(0.0, a.sweep) * a.radius * std::exp(cplx(0.0, a.start_angle + s * a.sweep));
}

double seg_distance(const Segment& seg, cplx p) {
  if (const auto* l = std::get_if<LineSegment>(&seg)) {
    const cplx d = l->to - l->from;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - l->from);
    const double s = std::clamp(((p - l->from) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (l->from + s * d));
  }
  const auto& a = std::get<ArcSegment>(seg);
  const double rho = std::abs(p - a.center);
  const double ends = std::min(std::abs(p - seg_point(seg, 0.0)), std::abs(p - seg_point(seg, 1.0)));
  if (std::abs(a.sweep) >= 2 * kPi || rho == 0.0) return std::min(ends, std::abs(rho - a.radius));
  // is the direction of p inside the swept angle range?
  const double lo = std::min(a.start_angle, a.start_angle + a.sweep);
  double phi = std::arg(p - a.center);
  while (phi < lo) phi += 2 * kPi;
  while (phi >= lo + 2 * kPi) phi -= 2 * kPi;
  if (phi <= lo + std::abs(a.sweep)) return std::min(ends, std::abs(rho - a.radius));
  return ends;
}

Segment seg_reversed(const Segment& seg) {
  if (const auto* l = std::get_if<LineSegment>(&seg)) return LineSegment{l->to, l->from};
  auto a = std::get<ArcSegment>(seg);
  a.start_angle += a.sweep;
  a.sweep = -a.sweep;
  return a;
}

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kB4{5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100,
                                    1.0 / 40};

CMat integrate_segment(const MeromorphicSystem& sys, const Segment& seg, CMat y, double tol, IntegratorStats& st) {
  auto rhs = [&](double s, const CMat& yy) -> CMat { return sys.evaluate(seg_point(seg, s)) * seg_velocity(seg, s) * yy; };
  double s = 0.0;
  double h = 0.05;
  constexpr double kMinStep = 1e-13;
  constexpr long kMaxSteps = 2'000'000;
  std::array<CMat, 7> k;
  k[0] = rhs(0.0, y);
  long steps = 0;
  while (s < 1.0) {
    if (++steps > kMaxSteps) throw ContinuationFailure("continuation exceeded the step budget");
    h = std::min(h, 1.0 - s);
    for (int i = 1; i < 7; ++i) {
      CMat yi = y;
      for (int j = 0; j < i; ++j)
        if (kA[i][j] != 0.0) yi += (h * kA[i][j]) * k[j];
      k[i] = rhs(s + kC[i] * h, yi);
    }
    CMat y5 = y, err = CMat::Zero(y.rows(), y.cols());
    for (int i = 0; i < 7; ++i) {
      if (kB5[i] != 0.0) y5 += (h * kB5[i]) * k[i];
      err += (h * (kB5[i] - kB4[i])) * k[i];
    }
    double en = 0.0;
    for (Eigen::Index a = 0; a < y.rows(); ++a)
      for (Eigen::Index b = 0; b < y.cols(); ++b) {
        const double sc = tol * (1.0 + std::max(std::abs(y(a, b)), std::abs(y5(a, b))));
        en = std::max(en, std::abs(err(a, b)) / sc);
      }
    if (!std::isfinite(en)) en = 1e10;
    if (en <= 1.0) {
      s += h;
      y = std::move(y5);
      k[0] = k[6];  // first-same-as-last
      ++st.accepted;
    } else {
      ++st.rejected;
    }
    const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= fac;
    if (h < kMinStep && s < 1.0) throw ContinuationFailure("step size collapsed during continuation");
  }
  return y;
}

}  // namespace

int MeromorphicSystem::n() const {
  if (!residues.empty()) return static_cast<int>(residues.front().rows());
  if (!poly.empty()) return static_cast<int>(poly.front().rows());
  throw std::invalid_argument("system has no coefficient data");
}

void MeromorphicSystem::validate() const {
  if (poles.size() != residues.size()) throw std::invalid_argument("system needs one residue per pole");
  const int d = n();
  for (const auto& m : residues)
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("residue has wrong size");
  for (const auto& m : poly)
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("polynomial coefficient has wrong size");
}

CMat MeromorphicSystem::evaluate(cplx t) const {
  const int d = n();
  CMat a = CMat::Zero(d, d);
  for (std::size_t i = 0; i < poles.size(); ++i) a += residues[i] / (t - poles[i]);
  cplx tk = 1.0;
  for (const auto& p : poly) {
    a += tk * p;
    tk *= t;
  }
  return a;
}

MeromorphicSystem MeromorphicSystem::conjugated(const CMat& g) const {
  const CMat gi = g.inverse();
  MeromorphicSystem out = *this;
  for (auto& r : out.residues) r = g * r * gi;
  for (auto& p : out.poly) p = g * p * gi;
  return out;
}

cplx PathSpec::start() const {
  if (segments.empty()) throw std::invalid_argument("empty path");
  return seg_point(segments.front(), 0.0);
}

cplx PathSpec::end() const {
  if (segments.empty()) throw std::invalid_argument("empty path");
  return seg_point(segments.back(), 1.0);
}

bool PathSpec::is_closed(double tol) const { return std::abs(start() - end()) <= tol * std::max(1.0, std::abs(start())); }

PathSpec PathSpec::reversed() const {
  PathSpec out{{}, clearance};
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) out.segments.push_back(seg_reversed(*it));
  return out;
}

PathSpec PathSpec::then(const PathSpec& next) const {
  if (std::abs(end() - next.start()) > 1e-9 * std::max(1.0, std::abs(end())))
    throw std::invalid_argument("paths do not join");
  PathSpec out = *this;
  out.segments.insert(out.segments.end(), next.segments.begin(), next.segments.end());
  out.clearance = std::min(clearance, next.clearance);
  return out;
}

double PathSpec::distance_to(const std::vector<cplx>& points) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments)
    for (const auto& p : points) d = std::min(d, seg_distance(seg, p));
  return d;
}

PathSpec PathSpec::circle(cplx center, double radius, int turns, bool counterclockwise, double start_angle) {
  if (radius <= 0.0 || turns < 1) throw std::invalid_argument("circle needs positive radius and turns");
  const double sweep = (counterclockwise ? 2.0 : -2.0) * kPi;
  PathSpec p{{}, radius / 10.0};
  for (int i = 0; i < turns; ++i) p.segments.push_back(ArcSegment{center, radius, start_angle, sweep});
  return p;
}

PathSpec PathSpec::polyline(const std::vector<cplx>& vertices) {
  if (vertices.size() < 2) throw std::invalid_argument("polyline needs two vertices");
  PathSpec p;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) p.segments.push_back(LineSegment{vertices[i], vertices[i + 1]});
  return p;
}

PathSpec PathSpec::lasso(cplx base, cplx point, double radius) {
  const cplx dir = base - point;
  if (std::abs(dir) <= radius) throw std::invalid_argument("lasso base point lies inside the circle");
  const double angle = std::arg(dir);
  const cplx touch = point + radius * std::exp(cplx(0.0, angle));
  PathSpec p{{LineSegment{base, touch}, ArcSegment{point, radius, angle, 2 * kPi}, LineSegment{touch, base}},
             radius / 10.0};
  return p;
}

CMat continue_along(const MeromorphicSystem& sys, const PathSpec& path, const CMat& y0, double tol,
                    IntegratorStats* stats) {
  sys.validate();
  if (path.segments.empty()) return y0;
  const double dist = path.distance_to(sys.poles);
  if (dist <= path.clearance || dist == 0.0)
    throw ContinuationFailure("path comes within the declared clearance of a singular point");
  IntegratorStats local;
  CMat y = y0;
  for (const auto& seg : path.segments) y = integrate_segment(sys, seg, y, tol, local);
  if (stats) *stats = local;
  return y;
}

CMat loop_monodromy(const MeromorphicSystem& sys, const PathSpec& loop, double tol) {
  if (!loop.is_closed(1e-9)) throw std::invalid_argument("monodromy requires a closed path");
  const CMat phi = continue_along(sys, loop, CMat::Identity(sys.n(), sys.n()), tol);
  return phi.inverse();
}

CMat local_monodromy_numeric(const MeromorphicSystem& sys, cplx puncture, double radius, double tol) {
  const bool declared = std::any_of(sys.poles.begin(), sys.poles.end(),
                                    [&](cplx p) { return std::abs(p - puncture) <= 1e-12 * std::max(1.0, std::abs(p)); });
  if (!declared) throw std::invalid_argument("puncture is not a declared singular point");
  for (const auto& p : sys.poles)
    if (std::abs(p - puncture) > 1e-12 && std::abs(p - puncture) < radius * 1.1)
      throw ContinuationFailure("another singular point lies within the requested disc");
  return loop_monodromy(sys, PathSpec::circle(puncture, radius), tol);
}

std::vector<CMat> monodromy_representation_serial(const MeromorphicSystem& sys, const std::vector<PathSpec>& loops,
                                                  double tol) {
  std::vector<CMat> out;
  for (const auto& l : loops) out.push_back(loop_monodromy(sys, l, tol));
  return out;
}

std::vector<CMat> monodromy_representation(const MeromorphicSystem& sys, const std::vector<PathSpec>& loops,
                                           double tol) {
  for (const auto& l : loops)
    if (!loops.empty() && std::abs(l.start() - loops.front().start()) > 1e-9)
      throw std::invalid_argument("loops do not share a base point");
  std::vector<CMat> out(loops.size());
  std::string failure;
  const long count = static_cast<long>(loops.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = loop_monodromy(sys, loops[static_cast<std::size_t>(i)], tol);
    } catch (const std::exception& e) {
#pragma omp critical
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw ContinuationFailure(failure);
  return out;
}

}  // namespace operlab::ode
