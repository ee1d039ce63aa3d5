#pragma once

// Points of the rank locus {rank <= t} inside a space of quadrics, found by
// slicing the minor ideal down to finitely many points and reading them off a
// lexicographic Groebner basis in shape position. A point defined over a
// number field is kept together with all its conjugates.

#include "amc/groebner.hpp"
#include "amc/quadrics.hpp"
#include "amc/rng.hpp"

#include <stop_token>
#include <vector>

namespace amc {

/// Dense univariate polynomials over Q, lowest coefficient first.
using UPoly = std::vector<Rat>;

namespace upoly {
void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
UPoly add(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly rem(const UPoly& a, const UPoly& m);
UPoly quot(const UPoly& a, const UPoly& m);
UPoly derivative(const UPoly& p);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic
UPoly squarefree_part(const UPoly& p);      // monic
bool is_squarefree(const UPoly& p);
std::string to_string(const UPoly& p, const std::string& var = "u");
}  // namespace upoly

/// Q(u) = sum_j u^j parts[j] for every root u of the squarefree minpoly. The
/// conjugates span the same space as the parts.
struct AlgebraicQuadric {
  UPoly minpoly;
  std::vector<Poly> parts;

  int degree() const { return upoly::degree(minpoly); }
};

/// All (t+1)-minors of Q(u) vanish modulo the minpoly, which is squarefree.
bool verify_algebraic_rank(const AlgebraicQuadric& q, int t);

struct LocusOptions {
  int attempts = 6;
  int first_chart = 0;  // charts a_j = 1 are tried from j = w-1-first_chart downwards
  std::size_t max_pairs = 40000;
  std::size_t max_coeff_bits = 20000;
};

/// Points of rank <= t in the span of the given quadrics.
std::vector<AlgebraicQuadric> sample_rank_locus(const std::vector<Poly>& space, int t, CounterRng& rng,
                                                const LocusOptions& opts = {}, std::stop_token stop = {});

}  // namespace amc
