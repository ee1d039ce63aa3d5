#include <doctest.h>

#include "amc/groebner.hpp"
#include "amc/linalg.hpp"
#include "support.hpp"

using namespace amc;
using amc::testing::P;

namespace {

// 2x2 minors of the 2 x d Hankel matrix in the variables of ring.
std::vector<Poly> hankel_minors(const Ring& R, int d) {
  std::vector<Poly> out;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      out.push_back(Poly::variable(R, static_cast<std::size_t>(i)) * Poly::variable(R, static_cast<std::size_t>(j + 1)) -
                    Poly::variable(R, static_cast<std::size_t>(i + 1)) * Poly::variable(R, static_cast<std::size_t>(j)));
  return out;
}

Poly spoly(const Poly& f, const Poly& g) {
  Monomial l = f.lead().mono.lcm(g.lead().mono);
  return f.mul_monomial(l / f.lead().mono, Rat(1) / f.lead().coeff) -
         g.mul_monomial(l / g.lead().mono, Rat(1) / g.lead().coeff);
}

// Independent check of the Buchberger criterion, with no pair pruning.
bool is_groebner(const std::vector<Poly>& G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (!normal_form(spoly(G[i], G[j]), G).is_zero()) return false;
  return true;
}

bool is_reduced(const std::vector<Poly>& G) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].lead().coeff != 1) return false;
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : G[i].terms())
        if (G[j].lead().mono.divides(t.mono)) return false;
    }
  }
  return true;
}

// Coefficient vectors of quadrics in a fixed monomial basis.
RatMatrix quadric_rows(const std::vector<Poly>& qs, const Ring& R) {
  const auto n = R->arity();
  std::vector<Monomial> monos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) monos.push_back(Monomial::variable(n, i) * Monomial::variable(n, j));
  RatMatrix m(static_cast<Eigen::Index>(qs.size()), static_cast<Eigen::Index>(monos.size()));
  for (std::size_t r = 0; r < qs.size(); ++r)
    for (std::size_t c = 0; c < monos.size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = qs[r].coeff(monos[c]);
  return m;
}

bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b, const Ring& R) {
  RatMatrix ma = quadric_rows(a, R), mb = quadric_rows(b, R);
  RatMatrix both(ma.rows() + mb.rows(), ma.cols());
  both << ma, mb;
  const auto r = exact_rank(both);
  return r == exact_rank(ma) && r == exact_rank(mb);
}

std::vector<Poly> degree_part(const std::vector<Poly>& G, int deg, const Ring& target) {
  std::vector<Poly> out;
  for (const auto& g : G)
    if (g.total_degree() == deg) out.push_back(change_ring(g, target));
  return out;
}

}  // namespace

TEST_CASE("principal ideal is its own basis") {
  auto R = make_ring("x", 3);
  auto gb = buchberger({P("x0*x2 - x1^2", R)});
  REQUIRE(gb.gens.size() == 1);
  CHECK(gb.gens[0] == P("x0*x2 - x1^2", R).monic());
  CHECK(gb.complete());
}

TEST_CASE("minors of the quartic normal curve form a basis") {
  auto R = make_ring("x", 5);
  auto minors = hankel_minors(R, 4);
  auto gb = buchberger(minors);
  CHECK(gb.gens.size() == 6);
  CHECK(same_span(gb.gens, minors, R));
  CHECK(is_groebner(gb.gens));
  CHECK(is_reduced(gb.gens));
}

TEST_CASE("normal forms of curve binomials") {
  auto R = make_ring("x", 6);
  auto gb = buchberger(hankel_minors(R, 5));
  CHECK(normal_form(P("x0*x5 - x2*x3", R), gb).is_zero());
  CHECK(normal_form(P("x0*x4 - x2^2", R), gb).is_zero());
  CHECK_FALSE(normal_form(P("x0*x5 - x1*x3", R), gb).is_zero());
  CHECK(ideal_membership(P("x0*x5 - x1*x3", R), gb) == Tri::no);
  for (const auto& g : hankel_minors(R, 5)) CHECK(normal_form(g, gb).is_zero());
}

TEST_CASE("eliminating a coordinate of the quintic curve") {
  // Order the dropped variable first so that an elimination order applies.
  std::vector<std::string> names{"x2", "x0", "x1", "x3", "x4", "x5"};
  auto E = make_ring(names, MonomialOrder::elimination(1));
  auto Std = make_ring("x", 6);
  std::vector<Poly> gens;
  for (const auto& m : hankel_minors(Std, 5)) gens.push_back(change_ring(m, E));
  auto gb = buchberger(gens);
  auto elim = eliminated_part(gb, 1);
  auto sub = make_ring({"x0", "x1", "x3", "x4", "x5"});
  auto quad = degree_part(elim, 2, sub);
  std::vector<Poly> expected{P("x4^2 - x3*x5", sub), P("x1*x4 - x0*x5", sub), P("x3^2 - x1*x5", sub),
                             P("x1*x3 - x0*x4", sub)};
  CHECK(quad.size() == 4);
  CHECK(same_span(quad, expected, sub));

  // Truncating at degree 2 gives the same quadrics.
  GroebnerLimits lim;
  lim.truncate_degree = 2;
  auto tgb = buchberger(gens, lim);
  CHECK(tgb.status == GbStatus::truncated);
  CHECK(same_span(degree_part(eliminated_part(tgb, 1), 2, sub), expected, sub));
}

TEST_CASE("binomial in the ideal of a monomial projection") {
  std::vector<std::string> names{"x3", "x0", "x1", "x2", "x4", "x5", "x6"};
  auto E = make_ring(names, MonomialOrder::elimination(1));
  auto Std = make_ring("x", 7);
  std::vector<Poly> gens;
  for (const auto& m : hankel_minors(Std, 6)) gens.push_back(change_ring(m, E));
  auto elim = eliminated_part(buchberger(gens), 1);
  auto sub = make_ring({"x0", "x1", "x2", "x4", "x5", "x6"});
  std::vector<Poly> in_sub;
  for (const auto& g : elim) in_sub.push_back(change_ring(g, sub));
  auto gb = buchberger(in_sub);
  CHECK(normal_form(P("x0*x6 - x2*x4", sub), gb).is_zero());
  // Elimination gives dim I_2 = C(d-1,2) - 2.
  CHECK(degree_part(gb.gens, 2, sub).size() >= 1);
  CHECK(exact_rank(quadric_rows(degree_part(elim, 2, sub), sub)) == 8);
}

TEST_CASE("lex basis of a zero-dimensional system") {
  auto R = make_ring({"x", "y"}, MonomialOrder::lex());
  auto gb = buchberger({P("x^2 + y^2 - 1", R), P("x - y", R)});
  REQUIRE(gb.gens.size() == 2);
  CHECK(gb.gens[0] == P("y^2 - 1/2", R));
  CHECK(gb.gens[1] == P("x - y", R));
}

TEST_CASE("random ideals: idempotence, soundness, reducedness") {
  CounterRng rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    auto R = make_ring("x", 3, trial % 2 ? MonomialOrder::lex() : MonomialOrder::degrevlex());
    std::vector<Poly> gens;
    for (int k = 0; k < 3; ++k) {
      auto p = amc::testing::random_poly(rng, R, 2, 3);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    auto gb = buchberger(gens);
    REQUIRE(gb.complete());
    CHECK(is_groebner(gb.gens));
    CHECK(is_reduced(gb.gens));
    for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
    auto again = buchberger(gb.gens);
    REQUIRE(again.gens.size() == gb.gens.size());
    for (std::size_t i = 0; i < gb.gens.size(); ++i) CHECK(again.gens[i] == gb.gens[i]);
    // Random combinations of the generators lie in the ideal.
    Poly f(R);
    for (const auto& g : gens) f = f + amc::testing::random_poly(rng, R, 2, 2) * g;
    CHECK(normal_form(f, gb).is_zero());
  }
}

TEST_CASE("radical and power membership") {
  auto R = make_ring("a", 3);
  CHECK(radical_membership(P("a1", R), {Poly::constant(R, Rat(1))}).result == Tri::yes);
  auto f = P("a0*a1 - a2^2", R);
  auto pc = power_membership(f, {f}, 1);
  CHECK(pc.result == Tri::yes);
  CHECK(*pc.exponent == 1);
  // a0^3 in <a0^3 + a1*a2, a1>, so a0 is in the radical with N = 3.
  std::vector<Poly> I{P("a0^3 + a1*a2", R), P("a1", R)};
  auto p3 = power_membership(P("a0", R), I, 4);
  CHECK(p3.result == Tri::yes);
  CHECK(*p3.exponent == 3);
  CHECK(radical_membership(P("a0", R), I).result == Tri::yes);
  CHECK(radical_membership(P("a2", R), I).result == Tri::no);
  CHECK(power_membership(P("a2", R), I, 5).result == Tri::no);
}

TEST_CASE("caps produce an inconclusive status") {
  auto R = make_ring("x", 4);
  GroebnerLimits lim;
  lim.max_pairs = 1;
  auto gb = buchberger(hankel_minors(R, 3), lim);
  CHECK(gb.status == GbStatus::cap_exceeded);
  std::stop_source src;
  src.request_stop();
  auto c = buchberger(hankel_minors(R, 3), {}, src.get_token());
  CHECK(c.status == GbStatus::cancelled);
}
