#include <doctest.h>

#include "amc/rankindex.hpp"
#include "support.hpp"

using namespace amc;
using amc::testing::P;

namespace {

Target scheme(std::string_view label) { return Target(build_scheme(parse_scheme(label))); }

UPoly random_upoly(CounterRng& rng, int deg) {
  UPoly p;
  for (int i = 0; i <= deg; ++i) p.push_back(rng.small_rat(5));
  upoly::trim(p);
  return p;
}

RankBudget quick() { return RankBudget::named("quick"); }

}  // namespace

TEST_CASE("univariate division and gcd") {
  CounterRng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    UPoly a = random_upoly(rng, static_cast<int>(rng.uniform(0, 7)));
    UPoly b = random_upoly(rng, static_cast<int>(rng.uniform(1, 4)));
    if (upoly::degree(b) < 0) continue;
    UPoly q = upoly::quot(a, b), r = upoly::rem(a, b);
    CHECK(upoly::degree(r) < upoly::degree(b));
    UPoly back = upoly::add(upoly::mul(q, b), r);
    upoly::trim(back);
    CHECK(back == a);

    UPoly c = random_upoly(rng, 2);
    if (upoly::degree(c) < 1) continue;
    UPoly g = upoly::gcd(upoly::mul(a, c), upoly::mul(b, c));
    CHECK(upoly::rem(g, c).empty());
    CHECK(upoly::degree(g) >= upoly::degree(c));
  }
}

TEST_CASE("squarefree part drops repeated factors") {
  UPoly p{Rat(-2), Rat(0), Rat(1)};  // u^2 - 2
  UPoly sq = upoly::mul(upoly::mul(p, p), UPoly{Rat(1), Rat(1)});
  CHECK_FALSE(upoly::is_squarefree(sq));
  UPoly s = upoly::squarefree_part(sq);
  CHECK(upoly::degree(s) == 3);
  CHECK(upoly::is_squarefree(s));
  CHECK(upoly::to_string(p) == "u^2 - 2");
}

TEST_CASE("algebraic rank of (x0 + u x1)^2 over Q(sqrt 2)") {
  Ring R = make_ring("x", 3);
  AlgebraicQuadric q{{Rat(-2), Rat(0), Rat(1)}, {P("x0^2 + 2*x1^2", R), P("2*x0*x1", R)}};
  CHECK(verify_algebraic_rank(q, 1));
  q.minpoly = {Rat(-3), Rat(0), Rat(1)};
  CHECK_FALSE(verify_algebraic_rank(q, 1));
  CHECK(verify_algebraic_rank(q, 2));
  q.minpoly = {Rat(4), Rat(-4), Rat(1)};  // (u-2)^2
  CHECK_FALSE(verify_algebraic_rank(q, 2));
}

TEST_CASE("rank locus of a double and a simple point") {
  auto t = scheme("apolar:T^2*S+2*T^3,3*S^4-S^3*T+2*T^4");
  CounterRng rng(5);
  auto pts = sample_rank_locus(t.scheme.basis, 3, rng);
  REQUIRE_FALSE(pts.empty());
  for (const auto& q : pts) CHECK(verify_algebraic_rank(q, 3));
}

TEST_CASE("delta at the monomial projections") {
  auto b5 = delta(scheme("mono:d=5,c=2"), 3);
  CHECK(b5.exact());
  CHECK(b5.lower == 2);
  auto b6 = delta(scheme("mono:d=6,c=2"), 3);
  CHECK(b6.exact());
  CHECK(b6.lower == 6);
  CHECK(b6.negative.forms.size() == 2);
  auto f6 = delta(scheme("mono:d=6,c=2"), 4);
  CHECK(f6.exact());
  CHECK(f6.lower == 8);
}

TEST_CASE("delta gaps at points of rank three") {
  SUBCASE("triple point, d = 6") {
    auto b = delta(scheme("apolar:T^3,3*S^5+S^4*T-S^3*T^2"), 3);
    CHECK(b.exact());
    CHECK(b.dim - b.lower == 2);
  }
  SUBCASE("double and simple point, d = 5") {
    auto b = delta(scheme("apolar:T^2*S+2*T^3,3*S^4-S^3*T+2*T^4"), 3);
    CHECK(b.exact());
    CHECK(b.dim - b.lower == 1);
    REQUIRE(b.positive.algebraic.size() == 1);
    CHECK(b.positive.algebraic[0].degree() == 3);
  }
  SUBCASE("e1 + e6") {
    auto b = delta(scheme("point:0,1,0,0,0,0,1"), 3);
    CHECK(b.exact());
    CHECK(b.lower == 7);
  }
}

TEST_CASE("certificates replay and reject corruption") {
  auto t = scheme("mono:d=7,c=3");
  auto d = certify_qr(t, 3);
  REQUIRE(d.status == QRStatus::holds);
  REQUIRE(d.positive);
  CHECK(verify(*d.positive, &t.scheme));
  CHECK(verify(*d.positive));

  auto bad = *d.positive;
  bad.basis_matrix(0, 0) += Rat(1);
  CHECK_FALSE(verify(bad));
  bad = *d.positive;
  bad.quadrics[0] = bad.quadrics[0] + P("x0^2", bad.quadrics[0].ring());
  CHECK_FALSE(verify(bad));
  bad = *d.positive;
  bad.quadrics.pop_back();
  CHECK_FALSE(verify(bad));
  const auto other = scheme("mono:d=7,c=2");
  CHECK_FALSE(verify(*d.positive, &other.scheme));

  auto x6 = scheme("mono:d=6,c=2");
  auto n = certify_qr(x6, 3);
  REQUIRE(n.status == QRStatus::fails);
  REQUIRE(n.negative);
  CHECK(n.negative->forms.size() == 2);
  CHECK(verify(*n.negative, &x6.scheme));
  auto nb = *n.negative;
  nb.witnesses[0].hit.scalar += Rat(1);
  CHECK_FALSE(verify(nb));
  nb = *n.negative;
  nb.witnesses[1].hit.exponent += 1;
  CHECK_FALSE(verify(nb));
  nb = *n.negative;
  nb.forms[1] = nb.forms[0];
  CHECK_FALSE(verify(nb));
}

TEST_CASE("algebraic families survive in a certificate") {
  auto t = scheme("apolar:S^3-S*T^2,T^5");
  auto d = certify_qr(t, 3);
  REQUIRE(d.status == QRStatus::holds);
  CHECK(verify(*d.positive, &t.scheme));
}

TEST_CASE("rank index endpoints") {
  for (int d = 4; d <= 6; ++d) {
    auto r = rank_index(scheme("rnc:d=" + std::to_string(d)));
    CHECK(r.exact());
    CHECK(r.lower == 3);
  }
  auto s = rank_index(scheme("scroll:a=1,b=4"));
  CHECK(s.exact());
  CHECK(s.lower == 4);
  auto x5 = rank_index(scheme("mono:d=5,c=2"));
  CHECK(x5.exact());
  CHECK(x5.lower == 4);
}

TEST_CASE("starved budgets are inconclusive, never wrong") {
  auto b = quick();
  b.harvest.max_samples = 0;
  b.use_locus = false;
  b.sieve.max_span = 0;
  b.rabinowitsch = false;
  auto d = certify_qr(scheme("apolar:T^3,3*S^5+S^4*T-S^3*T^2"), 3, b);
  CHECK(d.status != QRStatus::holds);
}

TEST_CASE("budget profiles") {
  CHECK(RankBudget::named("quick").harvest.max_samples < RankBudget::named("paper").harvest.max_samples);
  CHECK(RankBudget::named("exhaustive").harvest.max_samples > RankBudget::named("paper").harvest.max_samples);
  CHECK_THROWS(RankBudget::named("lavish"));
}

TEST_CASE("conjecture scan strata") {
  auto rep = conjecture_scan("1.4", 5, 5, 3, 3, quick());
  REQUIRE(rep.entries.size() == 3);
  for (const auto& e : rep.entries) {
    CHECK(e.rnc_rank == 3);
    CHECK(e.decision.status == (e.stratum == "three-simple" ? QRStatus::holds : QRStatus::fails));
  }
}
