#pragma once

// Projections of rational normal curves from a point: the parametrization by
// the apolar pair, the containing scroll, explicit quadric generators and an
// elimination route that computes the same ideal independently.

#include "amc/binform.hpp"
#include "amc/groebner.hpp"
#include "amc/poly.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

struct IdealBasis {
  Ring ring;
  std::vector<Poly> gens;
  std::vector<int> degree_profile() const;
};

/// 2x2 minors of the 2 x d Hankel matrix in the d+1 variables of ring.
std::vector<Poly> rnc_minors(const Ring& ring);

/// Binomials m - m' over quadratic monomials of equal index i+j that avoid
/// variable `skip` (pass -1 to keep all). Each index contributes every
/// monomial minus the last one in the list ordered by the smaller index.
std::vector<Poly> index_binomials(const Ring& ring, int d, int skip);

struct IndexList {
  int index = 0;
  std::vector<std::pair<int, int>> monomials;  // (i, j), i <= j
};
std::vector<IndexList> index_lists(int d, int c);

struct Parametrization {
  ApolarPair pair;
  std::vector<BinaryForm> components;  // g2 block, then g1 block
  int split = 0;                        // size of the g2 block, d1 - 1
  int d() const { return pair.d; }
};

Parametrization parametrize_apolar(const ApolarPair& pair);
Parametrization parametrize_projection(const ProjPoint& p);

/// Minors of the two-block Hankel matrix of S(a, b); ring arity a + b + 2.
IdealBasis scroll_ideal(int a, int b, const Ring& ring);

/// Scroll minors plus the divisor quadrics, in the coordinates z0..z_{d-1} of the parametrization.
IdealBasis projected_curve_quadrics(const Parametrization& par);
IdealBasis projected_curve_quadrics(const ProjPoint& p);

/// Index binomials of the monomial projection from e_c, in x_i (i != c).
IdealBasis monomial_projection_quadrics(int d, int c);

/// Basis (reduced echelon) of the quadrics vanishing on the parametrization
/// ring coordinate k -> components[k].
std::vector<Poly> quadrics_through(const Ring& ring, const std::vector<Poly>& components);

struct OracleResult {
  IdealBasis basis;
  GbStatus status = GbStatus::complete;
  std::size_t pairs = 0;
  std::vector<Poly> quadrics() const;
};

/// Eliminates x_drop from the ideal of C_d. Pass truncate = 2 to stop after
/// the quadrics.
OracleResult elimination_oracle(int d, int drop, std::optional<unsigned> truncate = std::nullopt,
                                const GroebnerLimits& limits = {}, std::stop_token stop = {});
/// Substitutes x = A^{-1} y into the ideal of C_d and eliminates y0. Rows
/// 1..d of A must annihilate the projection center.
OracleResult elimination_oracle(int d, const RatMatrix& change, std::optional<unsigned> truncate = std::nullopt,
                                const GroebnerLimits& limits = {}, std::stop_token stop = {});

/// y0 = x_j for the first nonzero coordinate j of p; y_{k+1} is the k-th
/// parametrization component. In these coordinates y_{k+1} matches z_k.
RatMatrix adapted_change(const ProjPoint& p);

/// Quadrics of X = C u L for a center of rank 3, from the elimination route.
IdealBasis union_trisecant_quadrics(const ProjPoint& p, const GroebnerLimits& limits = {});

enum class SchemeKind { rnc, projected_curve, scroll, union_trisecant, monomial_projection };
std::string to_string(SchemeKind k);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::rnc;
  int d = 0;
  int c = -1;
  int a = 0, b = 0;
  std::optional<ProjPoint> center;
  std::optional<ApolarPair> apolar;
  std::string label() const;
};

/// "rnc:d=6", "mono:d=6,c=3", "scroll:a=1,b=4", "point:0,0,1,0,1,0,0" or
/// "apolar:S^3-S*T^2,T^5".
SchemeSpec parse_scheme(std::string_view text);

struct Scheme {
  SchemeSpec spec;
  Ring ring;
  Ring param_ring;               // S,T for curves; S,T,X,Y for scrolls
  std::vector<Poly> components;  // coordinate k restricted to the parametrization
  std::vector<Poly> basis;       // basis of I_2 used for M_Q
  std::string basis_source;
  std::optional<Parametrization> param;

  bool is_curve() const { return param_ring->arity() == 2; }
  std::size_t dim_i2() const { return basis.size(); }
};

Scheme build_scheme(const SchemeSpec& spec);

}  // namespace amc
