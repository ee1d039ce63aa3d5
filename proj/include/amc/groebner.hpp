#pragma once

// Buchberger's algorithm with sugar selection and the Gebauer-Moeller
// criteria, plus the membership tests built on it. Every entry point is
// three-valued: a capped or cancelled run reports "unknown", never a guess.

#include "amc/poly.hpp"

#include <cstddef>
#include <optional>
#include <stop_token>
#include <vector>

namespace amc {

struct GroebnerLimits {
  std::size_t max_pairs = 200000;
  unsigned max_degree = 30;
  /// Largest numerator or denominator, in bits, of a new basis element; 0 is
  /// unbounded.
  std::size_t max_coeff_bits = 0;
  /// For homogeneous input: stop after all pairs up to this degree. The
  /// result is then a truncated basis, exact up to that degree.
  std::optional<unsigned> truncate_degree;
};

enum class GbStatus { complete, truncated, cap_exceeded, cancelled };
std::string to_string(GbStatus s);

enum class Tri { yes, no, unknown };
std::string to_string(Tri t);

struct GroebnerBasis {
  Ring ring;
  std::vector<Poly> gens;  // reduced, monic, sorted by increasing leading monomial
  GbStatus status = GbStatus::complete;
  std::size_t pairs_processed = 0;
  std::size_t pairs_reduced_to_zero = 0;
  unsigned max_degree_seen = 0;
  bool homogeneous = true;

  bool complete() const { return status == GbStatus::complete; }
  /// True when the basis is exact for elements of degree <= deg.
  bool exact_through(unsigned deg) const;
  bool is_unit() const;
};

/// Gröbner basis of the ideal generated by gens, in the order of their ring.
GroebnerBasis buchberger(const std::vector<Poly>& gens, const GroebnerLimits& limits = {},
                         std::stop_token stop = {});

/// Fully reduced remainder of f with respect to the polynomials in G.
Poly normal_form(const Poly& f, const std::vector<Poly>& G);
inline Poly normal_form(const Poly& f, const GroebnerBasis& G) { return normal_form(f, G.gens); }

/// f in <G>, decided only when G is exact in degree deg(f).
Tri ideal_membership(const Poly& f, const GroebnerBasis& G);

struct RadicalCheck {
  Tri result = Tri::unknown;
  GbStatus status = GbStatus::complete;
  std::size_t pairs = 0;
};

/// l in sqrt(I) via 1 in I + <1 - w l> with a fresh variable w.
RadicalCheck radical_membership(const Poly& l, const std::vector<Poly>& ideal, const GroebnerLimits& limits = {},
                                std::stop_token stop = {});

struct PowerCheck {
  std::optional<unsigned> exponent;  // smallest N with l^N in I
  Tri result = Tri::unknown;         // yes: found; no: none up to Nmax; unknown: capped
};

/// Smallest N <= nmax with l^N in I. For homogeneous ideals a basis truncated
/// at degree nmax * deg(l) suffices.
PowerCheck power_membership(const Poly& l, const std::vector<Poly>& ideal, unsigned nmax,
                            const GroebnerLimits& limits = {}, std::stop_token stop = {});

/// Generators of I cap K[variables outside the eliminated block], read from a
/// basis computed in an elimination order.
std::vector<Poly> eliminated_part(const GroebnerBasis& G, std::size_t block);

}  // namespace amc
