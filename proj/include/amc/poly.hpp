#pragma once

// Sparse multivariate polynomials over Q with named variables and a
// per-ring monomial order. Values are immutable once built; every operation
// returns a new canonical polynomial (terms sorted by decreasing monomial,
// no zero coefficients).

#include "amc/rat.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

enum class OrderKind { degrevlex, lex, elimination };

struct MonomialOrder {
  OrderKind kind = OrderKind::degrevlex;
  /// For elimination orders: variables [0, block) form the eliminated block.
  std::size_t block = 0;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder elimination(std::size_t k) { return {OrderKind::elimination, k}; }
  bool operator==(const MonomialOrder&) const = default;
};

std::string to_string(const MonomialOrder& o);
/// Accepts "degrevlex", "lex" and "elim:k".
MonomialOrder parse_order(std::string_view text);

class Monomial {
 public:
  using Exp = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<Exp> exps);

  std::size_t arity() const { return e_.size(); }
  unsigned degree() const { return deg_; }
  Exp operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Exp>& exponents() const { return e_; }

  Monomial operator*(const Monomial& o) const;
  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  static Monomial variable(std::size_t arity, std::size_t i, Exp power = 1);

  bool operator==(const Monomial& o) const { return e_ == o.e_; }

 private:
  std::vector<Exp> e_;
  unsigned deg_ = 0;
};

class RingCtx;
using Ring = std::shared_ptr<const RingCtx>;

class RingCtx {
 public:
  RingCtx(std::vector<std::string> names, MonomialOrder order);

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const MonomialOrder& order() const { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;

  bool same_as(const RingCtx& o) const { return this == &o || (names_ == o.names_ && order_ == o.order_); }

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
};

Ring make_ring(std::vector<std::string> names, MonomialOrder order = {});
/// Variables prefix0 .. prefix{n-1}.
Ring make_ring(std::string_view prefix, std::size_t n, MonomialOrder order = {});
Ring with_order(const Ring& ring, MonomialOrder order);

struct Term {
  Monomial mono;
  Rat coeff;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(Ring ring) : ring_(std::move(ring)) {}

  /// Canonicalizes: sorts, merges equal monomials, drops zeros.
  static Poly from_terms(Ring ring, std::vector<Term> terms);
  static Poly constant(Ring ring, const Rat& c);
  static Poly variable(Ring ring, std::size_t i);
  static Poly variable(Ring ring, std::string_view name);
  static Poly monomial(Ring ring, Monomial m, const Rat& c = Rat(1));

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& lead() const { return terms_.front(); }
  /// All terms but the leading one.
  Poly tail() const;

  int total_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  Rat coeff(const Monomial& m) const;
  Rat eval(std::span<const Rat> point) const;
  /// Indices of variables that occur.
  std::vector<std::size_t> support() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& c);

  /// this - c * m * g, computed by a single merge.
  Poly sub_scaled(const Rat& c, const Monomial& m, const Poly& g) const;
  Poly mul_monomial(const Monomial& m, const Rat& c = Rat(1)) const;
  Poly monic() const;
  Poly pow(unsigned n) const;

  bool operator==(const Poly& o) const;

  std::string to_string() const;

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

Poly add(const Poly& p, const Poly& q);
Poly sub(const Poly& p, const Poly& q);
Poly mul(const Poly& p, const Poly& q);
Poly scale(const Poly& p, const Rat& c);

inline Poly operator+(const Poly& p, const Poly& q) { return add(p, q); }
inline Poly operator-(const Poly& p, const Poly& q) { return sub(p, q); }
inline Poly operator*(const Poly& p, const Poly& q) { return mul(p, q); }
inline Poly operator*(const Rat& c, const Poly& p) { return scale(p, c); }
inline Poly operator*(const Poly& p, const Rat& c) { return scale(p, c); }

/// Simultaneous substitution. Variables without an entry are mapped to the
/// variable of the same name in the common target ring.
Poly substitute(const Poly& p, const std::map<std::string, Poly>& assignment);
/// Same, with a dense image list indexed by the variables of p's ring.
Poly substitute(const Poly& p, const std::vector<Poly>& images);

/// Re-expresses p in another ring by matching variable names.
Poly change_ring(const Poly& p, const Ring& target);

Poly parse_poly(std::string_view text, const Ring& ring);

void require_same_ring(const Poly& p, const Poly& q);

}  // namespace amc
