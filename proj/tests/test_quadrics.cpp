#include <doctest.h>

#include "amc/groebner.hpp"
#include "amc/quadrics.hpp"
#include "support.hpp"

using namespace amc;
using amc::testing::P;

namespace {

// Quadrics of the quintic curve projected from the third coordinate point.
std::vector<Poly> x5_basis(const Ring& R) {
  return {P("x0*x4 - x1*x3", R), P("x0*x5 - x1*x4", R), P("x1*x5 - x3^2", R), P("x3*x5 - x4^2", R)};
}

RatMatrix random_invertible(CounterRng& rng, int n) {
  for (;;) {
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = Rat(rng.uniform(-3, 3));
    if (exact_rank(a) == n) return a;
  }
}

}  // namespace

TEST_CASE("sym2 indexing is lex") {
  CHECK(sym2_size(3) == 6);
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) CHECK(sym2_index(4, i, j) == k++);
  CHECK(sym2_index(4, 2, 1) == sym2_index(4, 1, 2));
}

TEST_CASE("ranks of small quadrics") {
  auto R = make_ring("x", 7);
  CHECK(quad_rank(P("x0*x4 - x2^2", R)) == 3);
  CHECK(quad_rank(P("x0*x4 - x1*x3", R)) == 4);
  CHECK(quad_rank(P("(x0 + x4)*(x2 + x6) - (x1 + x5)^2", R)) == 3);
  CHECK(quad_rank(P("x3^2", R)) == 1);
  CHECK(quad_rank(P("x0*x1", R)) == 2);
  CHECK_THROWS(quad_rank(Poly(R)));
  CHECK_THROWS(quad_rank(P("x0*x1*x2", R)));
}

TEST_CASE("matrix and polynomial round trip") {
  CounterRng rng(77);
  auto R = make_ring("z", 5);
  for (int trial = 0; trial < 30; ++trial) {
    Poly q(R);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j)
        if (rng.uniform(0, 2) == 0) q += rng.small_rat(5) * Poly::variable(R, i) * Poly::variable(R, j);
    CHECK(quadric_from_matrix(R, quadric_matrix(q)) == q);
    CHECK(quadric_from_vector(R, quadric_vector(q)) == q);
    RatMatrix m = quadric_matrix(q);
    CHECK(m == m.transpose());
  }
}

TEST_CASE("rank is invariant under linear change of coordinates") {
  CounterRng rng(5);
  auto R = make_ring("z", 5);
  for (int trial = 0; trial < 20; ++trial) {
    Poly q(R);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j)
        if (rng.uniform(0, 3) == 0) q += rng.small_rat(4) * Poly::variable(R, i) * Poly::variable(R, j);
    if (q.is_zero()) q = P("z0*z3 - z2^2", R);
    RatMatrix a = random_invertible(rng, 5);
    std::vector<Poly> images;
    for (int i = 0; i < 5; ++i) {
      Poly l(R);
      for (int j = 0; j < 5; ++j) l += a(i, j) * Poly::variable(R, static_cast<std::size_t>(j));
      images.push_back(l);
    }
    const Poly moved = substitute(q, images);
    CHECK(quad_rank(moved) == quad_rank(q));
    CHECK(quadric_matrix(moved) == RatMatrix(a.transpose() * quadric_matrix(q) * a));
  }
}

TEST_CASE("coordinates in a quadric space") {
  auto R = make_ring({"x0", "x1", "x3", "x4", "x5"});
  QuadricSpace V(x5_basis(R));
  CHECK(V.dim() == 4);
  auto c = V.coords(P("2*(x0*x4 - x1*x3) - (x3*x5 - x4^2)", R));
  REQUIRE(c);
  CHECK((*c)(0) == 2);
  CHECK((*c)(1) == 0);
  CHECK((*c)(3) == -1);
  CHECK_FALSE(V.contains(P("x0*x3", R)));
  CHECK_THROWS(QuadricSpace({P("x0*x1", R), P("2*x0*x1", R)}));
}

TEST_CASE("generic matrix specializes to the combination") {
  CounterRng rng(9);
  auto R = make_ring({"x0", "x1", "x3", "x4", "x5"});
  auto basis = x5_basis(R);
  auto M = generic_matrix(basis);
  CHECK(M.size() == 5);
  CHECK(M.params() == 4);
  for (int trial = 0; trial < 10; ++trial) {
    RatVector a = amc::testing::random_vector(rng, 4);
    Poly q(R);
    for (int k = 0; k < 4; ++k) q += a(k) * basis[static_cast<std::size_t>(k)];
    CHECK(M.specialize(a) == quadric_matrix(q));
    // Entries evaluated at a agree with the specialization.
    std::vector<Rat> pt(a.data(), a.data() + a.size());
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        CHECK(M.entry(i, j).eval(pt) == M.specialize(a)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  }
}

TEST_CASE("singleton basis gives the scaled conic matrix") {
  auto R = make_ring("x", 3);
  auto M = generic_matrix({P("x0*x2 - x1^2", R)});
  auto A = M.coeff_ring();
  CHECK(M.entry(0, 2) == P("1/2*a0", A));
  CHECK(M.entry(1, 1) == P("-a0", A));
  CHECK(M.entry(0, 0).is_zero());
  auto ones = minors(M, 1);
  CHECK(ones.size() == 2);
  CHECK_THROWS(minors(M, 4));
}

TEST_CASE("minors agree with numeric determinants") {
  CounterRng rng(31);
  auto R = make_ring({"x0", "x1", "x3", "x4", "x5"});
  auto M = generic_matrix(x5_basis(R));
  auto ms = minors(M, 3);
  CHECK(!ms.empty());
  for (int trial = 0; trial < 5; ++trial) {
    RatVector a = amc::testing::random_vector(rng, 4);
    std::vector<Rat> pt(a.data(), a.data() + a.size());
    RatMatrix s = M.specialize(a);
    for (std::size_t t = 0; t < ms.size(); t += 7) {
      RatMatrix sub(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          sub(i, j) = s(static_cast<Eigen::Index>(ms[t].rows[static_cast<std::size_t>(i)]),
                        static_cast<Eigen::Index>(ms[t].cols[static_cast<std::size_t>(j)]));
      CHECK(ms[t].det.eval(pt) == fraction_free_determinant(sub));
    }
  }
}

TEST_CASE("pure powers and reduction modulo linear forms") {
  auto R = make_ring("a", 3);
  auto pp = pure_power(P("-3*(a0 + 2*a1)^4", R));
  REQUIRE(pp);
  CHECK(pp->exponent == 4);
  CHECK(pp->scalar == -3);
  CHECK(pp->form == P("a0 + 2*a1", R));
  CHECK_FALSE(pure_power(P("a0^2 - a1^2", R)));
  CHECK_FALSE(pure_power(P("a0*a1", R)));
  CHECK(reduce_mod_linear(P("a0^2 + a1*a2", R), {P("a1", R)}) == P("a0^2", R));
  CHECK(reduce_mod_linear(P("a0*a1", R), {P("a0 - a1", R)}).total_degree() == 2);
}

TEST_CASE("sieve on the quintic projection finds both forms") {
  auto R = make_ring({"x0", "x1", "x3", "x4", "x5"});
  auto M = generic_matrix(x5_basis(R));
  auto hits = triangular_sieve(M, 3);
  REQUIRE(hits.size() == 2);
  auto A = M.coeff_ring();
  CHECK(hits[0].form == P("a0", A));
  CHECK(hits[1].form == P("a1", A));
  CHECK(hits[0].exponent == 4);
  std::vector<Poly> earlier;
  for (const auto& h : hits) {
    CHECK(replay_sieve_hit(M, h, earlier));
    earlier.push_back(h.form);
  }
  // Replaying without the first form must fail for the second hit.
  CHECK_FALSE(replay_sieve_hit(M, hits[1], {}));
}

TEST_CASE("power membership in the rank-3 minor ideal") {
  auto R = make_ring({"x0", "x1", "x3", "x4", "x5"});
  auto M = generic_matrix(x5_basis(R));
  std::vector<Poly> I;
  for (const auto& m : minors(M, 4)) I.push_back(m.det);
  auto A = M.coeff_ring();
  auto pc = power_membership(P("a0", A), I, 4);
  CHECK(pc.result == Tri::yes);
  CHECK(*pc.exponent == 4);
  CHECK(power_membership(P("a0", A), I, 3).result == Tri::no);
  CHECK(power_membership(P("a2", A), I, 4).result == Tri::no);
}
