#pragma once

#include "amc/binform.hpp"
#include "amc/poly.hpp"
#include "amc/quadrics.hpp"
#include "amc/rng.hpp"

#include <doctest.h>

namespace amc::testing {

inline Poly random_poly(CounterRng& rng, const Ring& ring, int max_degree, int max_terms) {
  std::vector<Term> terms;
  const long n = rng.uniform(0, max_terms);
  for (long k = 0; k < n; ++k) {
    std::vector<Monomial::Exp> e(ring->arity(), 0);
    long budget = rng.uniform(0, max_degree);
    while (budget-- > 0) ++e[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(ring->arity()) - 1))];
    terms.push_back({Monomial(std::move(e)), rng.small_rat(7)});
  }
  return Poly::from_terms(ring, std::move(terms));
}

inline BinaryForm random_form(CounterRng& rng, int degree, long height = 6) {
  RatVector c(degree + 1);
  for (int i = 0; i <= degree; ++i) c(i) = rng.small_rat(height);
  return BinaryForm(c);
}

inline RatVector random_vector(CounterRng& rng, int n, long height = 6) {
  RatVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.small_rat(height);
  return v;
}

inline Poly P(std::string_view text, const Ring& ring) { return parse_poly(text, ring); }

inline RatMatrix quadric_span_rows(const std::vector<Poly>& qs, const Ring& R) {
  RatMatrix m(static_cast<Eigen::Index>(qs.size()), static_cast<Eigen::Index>(sym2_size(R->arity())));
  for (std::size_t r = 0; r < qs.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = quadric_vector(qs[r]).transpose();
  return m;
}

inline bool same_quadric_span(const std::vector<Poly>& a, const std::vector<Poly>& b, const Ring& R) {
  RatMatrix ma = quadric_span_rows(a, R), mb = quadric_span_rows(b, R);
  RatMatrix both(ma.rows() + mb.rows(), ma.cols());
  both << ma, mb;
  const auto r = exact_rank(both);
  return r == exact_rank(ma) && r == exact_rank(mb);
}

/// Renames variables positionally into the target ring.
inline Poly rename(const Poly& p, const Ring& target) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < target->arity(); ++i) images.push_back(Poly::variable(target, i));
  return substitute(p, images);
}

}  // namespace amc::testing

namespace doctest {
template <>
struct StringMaker<amc::BinaryForm> {
  static String convert(const amc::BinaryForm& f) { return f.to_string().c_str(); }
};
template <>
struct StringMaker<amc::Poly> {
  static String convert(const amc::Poly& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<amc::Rat> {
  static String convert(const amc::Rat& r) { return amc::to_string(r).c_str(); }
};
}  // namespace doctest
