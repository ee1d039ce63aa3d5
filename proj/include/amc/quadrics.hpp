#pragma once

// Quadratic forms as symmetric matrices, the generic member M_Q of a space of
// quadrics and its minors, and the determinantal sieve for linear forms in
// the radical of a minor ideal.

#include "amc/linalg.hpp"
#include "amc/poly.hpp"

#include <cstddef>
#include <optional>
#include <stop_token>
#include <vector>

namespace amc {

/// Degree-2 monomials z_i z_j (i <= j) in lex order.
std::size_t sym2_size(std::size_t n);
std::size_t sym2_index(std::size_t n, std::size_t i, std::size_t j);

/// Coefficient vector of a quadratic form; throws for anything else.
RatVector quadric_vector(const Poly& q);
Poly quadric_from_vector(const Ring& ring, const RatVector& v);

/// Symmetric matrix with z^T M z = q (off-diagonal entries halved).
RatMatrix quadric_matrix(const Poly& q);
Poly quadric_from_matrix(const Ring& ring, const RatMatrix& m);

class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(Poly q);
  static QuadraticForm from_matrix(const Ring& ring, const RatMatrix& m);

  const Poly& poly() const { return poly_; }
  const RatMatrix& matrix() const { return matrix_; }
  std::optional<RatVector> coord;  // against a chosen I_2 basis

 private:
  Poly poly_;
  RatMatrix matrix_;
};

int quad_rank(const QuadraticForm& q);
int quad_rank(const Poly& q);

/// A space of quadrics with a fixed basis; solves for coordinates.
class QuadricSpace {
 public:
  QuadricSpace() = default;
  explicit QuadricSpace(std::vector<Poly> basis);

  const Ring& ring() const { return ring_; }
  const std::vector<Poly>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::optional<RatVector> coords(const Poly& q) const;
  bool contains(const Poly& q) const { return coords(q).has_value(); }

 private:
  Ring ring_;
  std::vector<Poly> basis_;
  CoordinateSolver<Rat> solver_;
};

/// Quadrics spanning the same space as the input, in reduced echelon form.
std::vector<Poly> echelon_quadrics(const Ring& ring, const std::vector<Poly>& qs);

/// M_Q = sum_k a_k M_{Q_k}, entries linear in the coefficient ring a0..at.
class GenericSymMatrix {
 public:
  GenericSymMatrix() = default;
  GenericSymMatrix(const Ring& var_ring, std::vector<RatMatrix> slices);

  std::size_t size() const { return size_; }
  std::size_t params() const { return slices_.size(); }
  const Ring& coeff_ring() const { return coeff_ring_; }
  const Ring& var_ring() const { return var_ring_; }
  const std::vector<RatMatrix>& slices() const { return slices_; }

  /// Entry (i, j) as a linear form in a0..at.
  const Poly& entry(std::size_t i, std::size_t j) const;
  RatMatrix specialize(const RatVector& a) const;

 private:
  Ring var_ring_, coeff_ring_;
  std::size_t size_ = 0;
  std::vector<RatMatrix> slices_;
  std::vector<Poly> entries_;
};

GenericSymMatrix generic_matrix(const std::vector<Poly>& basis);

/// Determinant of the submatrix by cofactor expansion.
Poly submatrix_determinant(const GenericSymMatrix& m, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols);

struct Minor {
  std::vector<std::size_t> rows, cols;
  Poly det;
};

/// All nonzero k x k minors; (rows, cols) and (cols, rows) are listed once.
std::vector<Minor> minors(const GenericSymMatrix& m, int k, std::stop_token stop = {});

/// g modulo the ideal generated by linear forms, by eliminating pivot
/// variables of their reduced echelon form.
Poly reduce_mod_linear(const Poly& g, const std::vector<Poly>& linear);

struct PurePower {
  Rat scalar;
  Poly form;  // linear, leading coefficient 1
  unsigned exponent = 0;
};

/// g = scalar * form^exponent with form linear, if that is the case.
std::optional<PurePower> pure_power(const Poly& g);

struct SieveHit {
  Poly form;  // new linear form in the radical, leading coefficient 1
  unsigned exponent = 0;
  Rat scalar;
  std::vector<std::size_t> rows, cols;
  Poly det;       // the unreduced minor
  std::size_t known_before = 0;  // number of forms it was reduced against
};

struct SieveOptions {
  /// Largest number of distinct indices a scanned submatrix may touch.
  std::size_t max_span = 6;
  std::size_t max_forms = 64;
};

/// Scans (k+1) x (k+1) submatrices, principal ones first, for determinants
/// that become c * l^N modulo the known linear forms. Every new l joins the
/// known forms; the scan repeats until nothing new appears.
std::vector<SieveHit> triangular_sieve(const GenericSymMatrix& m, int k, std::vector<Poly> known = {},
                                       const SieveOptions& opts = {}, std::stop_token stop = {});

/// Recomputes the minor and checks det - scalar * form^N lies in the ideal of
/// the earlier forms.
bool replay_sieve_hit(const GenericSymMatrix& m, const SieveHit& hit, const std::vector<Poly>& earlier);

}  // namespace amc
