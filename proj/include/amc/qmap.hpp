#pragma once

// Rank-3 quadrics from the Q-map (s, t, h) -> L(s^2 h) L(t^2 h) - L(s t h)^2,
// where L reads a product off in the coordinates of the target, and searches
// that collect rank-3 or rank-4 members of I_2.

#include "amc/binform.hpp"
#include "amc/curvegen.hpp"
#include "amc/quadrics.hpp"

#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

namespace amc {

struct Decomposition {
  int d = 0, a = 0, b = 0;  // 2a + b = d
  static Decomposition make(int d, int a);
};
std::vector<Decomposition> decompositions(int d);

struct QTriple {
  BinaryForm s, t, h;
};

/// Q = l1 * l2 - l3^2.
struct QWitness {
  Poly l1, l2, l3;
  Poly quadric() const { return l1 * l2 - l3 * l3; }
};

/// The span of the coordinate functions restricted to the parametrization.
/// Coordinates of a product in this span give the linear form L.
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(const Scheme& s);

  const Ring& ring() const { return ring_; }
  const Ring& param_ring() const { return param_ring_; }
  /// L(u), or nothing when u is outside the span.
  std::optional<Poly> linear_form(const Poly& u) const;
  std::optional<Poly> linear_form(const BinaryForm& u) const;
  bool contains(const BinaryForm& u) const;
  /// Columns: functionals on R_d vanishing on the span (curves only).
  const RatMatrix& annihilator() const { return annihilator_; }
  int degree() const { return degree_; }

 private:
  Ring ring_, param_ring_;
  int degree_ = 0;
  std::vector<std::vector<Monomial::Exp>> monomials_;
  CoordinateSolver<Rat> solver_;
  RatMatrix annihilator_;
  bool curve_ = false;
};

/// A scheme together with its linear system and quadric space.
struct Target {
  Scheme scheme;
  LinearSystem system;
  QuadricSpace space;
  explicit Target(Scheme s);
  std::size_t dim() const { return space.dim(); }
  bool monomial() const;
};

struct QMapResult {
  QuadraticForm q;
  QWitness witness;
};

/// Throws when a product leaves the linear system or s, t are proportional.
QMapResult qab(const Decomposition& dec, const QTriple& tr, const Target& target);
/// Same with polynomial arguments in the parameter ring (used for scrolls).
QMapResult qmap_poly(const Target& target, const Poly& s, const Poly& t, const Poly& h);

struct LemmaIdentity {
  std::string lemma;
  std::vector<int> indices;
  Poly target;
  std::vector<Poly> pieces;  // rank <= 3 quadrics in I_2 summing to target
  bool verify(const QuadricSpace& space) const;
};

/// Quadrics of the monomial projection written as sums of rank-3 members,
/// following the identity lemmas of the monomial case.
std::vector<LemmaIdentity> lemma_identity_gens(int d, int c);
/// The Q-map triples behind the identity lemmas.
QTriple balanced_triple(int d, int i, int j, int k);
QTriple outer_five_triple(int d, int i, const Rat& a);
QTriple inner_five_triple(int d, int i, const Rat& a);

/// Three-parameter families of triples for (f_p)^perp = (S^3 - S T^2, T^{d-1}),
/// d = 6 or 7, family 1..3.
QTriple three_point_family(int d, int family, const Rat& g0, const Rat& g1, const Rat& g2 = Rat(1));

struct HarvestItem {
  Poly quadric;
  RatVector coord;
  int rank = 0;
  std::string source;
  std::optional<QWitness> witness;
};

struct HarvestBudget {
  std::uint64_t seed = 1;
  int max_samples = 300;
  long height = 5;
};

struct Harvest {
  std::vector<HarvestItem> items;
  std::size_t target_dim = 0;
  int max_rank = 3;
  std::size_t samples = 0;
  bool spans() const { return items.size() == target_dim; }
};

Harvest rank3_harvest(const Target& target, const HarvestBudget& budget = {}, std::stop_token stop = {});
Harvest rank4_harvest(const Target& target, const HarvestBudget& budget = {}, std::stop_token stop = {});
/// Only the given three-point family, swept over small parameters.
Harvest three_point_family_harvest(const Target& target, int family, const HarvestBudget& budget = {});

}  // namespace amc
