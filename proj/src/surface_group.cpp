#include "operlab/surface_group.hpp"

#include <cctype>
#include <sstream>

namespace operlab::surface {

SurfacePresentation::SurfacePresentation(int genus, int punctures) : g(genus), r(punctures) {
  if (g < 0 || r < 0) throw std::invalid_argument("genus and punctures must be nonnegative");
  if (2 * g - 2 + r <= 0) throw std::invalid_argument("surface must be hyperbolic (2g - 2 + r > 0)");
}

std::string SurfacePresentation::name(int gen) const {
  if (gen < 0 || gen >= generator_count()) throw UnknownGenerator("generator index out of range");
  if (gen < g) return "A" + std::to_string(gen + 1);
  if (gen < 2 * g) return "B" + std::to_string(gen - g + 1);
  return "T" + std::to_string(gen - 2 * g + 1);
}

int SurfacePresentation::index(const std::string& nm) const {
  for (int i = 0; i < generator_count(); ++i)
    if (name(i) == nm) return i;
  throw UnknownGenerator("unknown generator '" + nm + "'");
}

Word SurfacePresentation::relator() const {
  Word w;
  for (int j = 0; j < g; ++j) {
    w.push_back({a(j), 1});
    w.push_back({b(j), 1});
    w.push_back({a(j), -1});
    w.push_back({b(j), -1});
  }
  for (int i = 0; i < r; ++i) w.push_back({t(i), 1});
  return w;
}

Word SurfacePresentation::parse_word(const std::string& text) const {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int exp = 1;
    if (const auto pos = tok.find("^-1"); pos != std::string::npos) {
      exp = -1;
      tok = tok.substr(0, pos);
    } else if (!tok.empty() && std::islower(static_cast<unsigned char>(tok[0]))) {
      exp = -1;
      tok[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    }
    w.push_back({index(tok), exp});
  }
  return w;
}

Word SurfacePresentation::inverse(const Word& w) const {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

void GroupRepresentation::validate(double tol) const {
  if (static_cast<int>(gens.size()) != presentation.generator_count())
    throw std::invalid_argument("representation needs one matrix per generator");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != 2 || gens[i].cols() != 2) throw std::invalid_argument("generator images must be 2x2");
    if (std::abs(gens[i].determinant() - 1.0) > tol * std::max(1.0, gens[i].squaredNorm()))
      throw lie::NotUnimodular("generator " + presentation.name(static_cast<int>(i)) + " is not unimodular");
  }
  const RMat rel = evaluate(presentation.relator());
  const double scale = std::max(1.0, rel.cwiseAbs().maxCoeff());
  const bool plus = (rel - RMat::Identity(2, 2)).cwiseAbs().maxCoeff() <= tol * scale * 1e3;
  const bool minus = (rel + RMat::Identity(2, 2)).cwiseAbs().maxCoeff() <= tol * scale * 1e3;
  if (!plus && !minus) throw InconsistentAction("relator does not evaluate to +-identity");
}

RMat GroupRepresentation::evaluate(const Word& w) const {
  RMat m = RMat::Identity(2, 2);
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= static_cast<int>(gens.size())) throw UnknownGenerator("generator index out of range");
    const RMat& x = gens[static_cast<std::size_t>(l.gen)];
    if (l.exp > 0) {
      m = m * x;
    } else {
      RMat inv(2, 2);
      inv << x(1, 1), -x(0, 1), -x(1, 0), x(0, 0);
      m = m * inv;
    }
  }
  return m;
}

}  // namespace operlab::surface
