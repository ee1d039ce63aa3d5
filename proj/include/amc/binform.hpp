#pragma once

// Binary forms, the apolarity (differentiation) pairing and apolar ideals.
//
// A form of degree d is stored by its monomial coefficients c_i of
// X^{d-i} Y^i. The same type serves for forms in s,t and for dual forms in
// S,T; which is which is a matter of use. The divided-power coordinates of a
// form are b_i = (d-i)! i! c_i, i.e. f = sum b_i s^[d-i] t^[i].

#include "amc/poly.hpp"
#include "amc/rat.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

class BinaryForm {
 public:
  BinaryForm() = default;
  /// Monomial-basis coefficients, length degree+1.
  explicit BinaryForm(RatVector coeffs);

  static BinaryForm zero(int degree);
  /// c * X^{d-i} Y^i
  static BinaryForm monomial(int degree, int i, const Rat& c = Rat(1));
  static BinaryForm from_divided_powers(const RatVector& b);
  /// (alpha X + beta Y)^d
  static BinaryForm linear_power(const Rat& alpha, const Rat& beta, int d);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const RatVector& coeffs() const { return c_; }
  const Rat& operator[](int i) const { return c_(i); }
  RatVector divided_powers() const;

  bool is_zero() const { return c_.isZero(); }
  Rat eval(const Rat& x, const Rat& y) const;

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator-() const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator*(const Rat& c) const;
  BinaryForm pow(int n) const;
  bool operator==(const BinaryForm& o) const;

  /// Partial derivatives with respect to the first and second variable.
  BinaryForm diff_x() const;
  BinaryForm diff_y() const;

  /// First nonzero coefficient (highest power of the first variable) is 1.
  BinaryForm normalized_leading() const;
  /// Last nonzero coefficient is 1.
  BinaryForm normalized_trailing() const;
  /// Index of the first / last nonzero coefficient; -1 for zero.
  int first_nonzero() const;
  int last_nonzero() const;

  std::string to_string(std::string_view x = "S", std::string_view y = "T") const;
  Poly to_poly(const Ring& ring, std::size_t x = 0, std::size_t y = 1) const;

 private:
  RatVector c_;
};

/// Parses a form written in S,T (or s,t). If degree is given the text must
/// be homogeneous of that degree (the zero form is accepted).
BinaryForm parse_binary_form(std::string_view text, std::optional<int> degree = std::nullopt);
BinaryForm form_from_poly(const Poly& p, std::size_t x = 0, std::size_t y = 1);

class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(RatVector coords);

  static ProjPoint parse(std::string_view csv);
  static ProjPoint torus_fixed(int d, int i);

  int dim() const { return static_cast<int>(x_.size()) - 1; }
  const RatVector& coords() const { return x_; }
  /// First nonzero coordinate scaled to 1.
  ProjPoint normalized() const;
  bool projectively_equal(const ProjPoint& o) const;
  std::string to_string() const;

 private:
  RatVector x_;
};

struct ApolarPair {
  BinaryForm g1, g2;
  int d = 0;
  int d1() const { return g1.degree(); }
  int d2() const { return g2.degree(); }
};

/// F o f for F of degree j acting on f of degree i >= j.
BinaryForm apolar_pairing(const BinaryForm& F, const BinaryForm& f);

/// Matrix of G -> G o f from degree-e dual forms (columns, monomial basis)
/// to degree d-e forms (rows, monomial basis).
RatMatrix catalecticant(const BinaryForm& f, int e);

/// Rows of the returned matrix span the degree-e part of the ideal (gens)
/// in monomial coordinates.
RatMatrix ideal_degree_part(const std::vector<BinaryForm>& gens, int e);

ApolarPair apolar_ideal(const BinaryForm& f);
/// Generic dimension check: dim (f^perp)_e from the catalecticant.
int perp_dimension(const BinaryForm& f, int e);

BinaryForm point_to_form(const ProjPoint& p);
ProjPoint form_to_point(const BinaryForm& f);
/// The (up to scalar unique) degree-d form whose annihilator in degree d is
/// ((g1, g2))_d. Throws when that space is not a hyperplane.
BinaryForm form_from_apolar(const BinaryForm& g1, const BinaryForm& g2, int d);
ApolarPair make_apolar_pair(const BinaryForm& g1, const BinaryForm& g2, int d);

int rnc_rank(const ProjPoint& p);

Rat resultant(const BinaryForm& a, const BinaryForm& b);
/// Monic-normalized (leading) greatest common divisor.
BinaryForm binary_gcd(const BinaryForm& a, const BinaryForm& b);
/// Exact division; throws if b does not divide a.
BinaryForm exact_divide(const BinaryForm& a, const BinaryForm& b);
bool divides(const BinaryForm& b, const BinaryForm& a);
/// Product of the distinct irreducible factors.
BinaryForm squarefree_part(const BinaryForm& g);

enum class MultiplicityType { triple, double_simple, three_simple };
std::string to_string(MultiplicityType t);
MultiplicityType multiplicity_type(const ApolarPair& pair);
MultiplicityType multiplicity_type(const BinaryForm& cubic);

/// Rational linear factors with multiplicity, each normalized.
std::vector<BinaryForm> rational_linear_factors(const BinaryForm& g);
/// Some quadratic factor over Q, if one exists and can be found within the
/// search bounds.
std::optional<BinaryForm> rational_quadratic_factor(const BinaryForm& g);

}  // namespace amc
