#include <doctest.h>

#include "amc/linalg.hpp"
#include "support.hpp"

using namespace amc;

namespace {

BinaryForm F(std::string_view text) { return parse_binary_form(text); }

// Hilbert function of a complete intersection of degrees d1 <= d2 in two variables.
int ci_dimension(int d1, int d2, int e) {
  int dim = 0;
  if (e >= d1) dim += e - d1 + 1;
  if (e >= d2) dim += e - d2 + 1;
  return std::min(dim, e + 1);
}

}  // namespace

TEST_CASE("divided powers are dual to monomials") {
  for (int d = 0; d <= 10; ++d)
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        RatVector b = RatVector::Zero(d + 1);
        b(j) = 1;
        auto val = apolar_pairing(BinaryForm::monomial(d, i), BinaryForm::from_divided_powers(b));
        CHECK(val.degree() == 0);
        CHECK(val[0] == Rat(i == j ? 1 : 0));
      }
}

TEST_CASE("reconstruction from pairings") {
  CounterRng rng(3);
  for (int d = 0; d <= 10; ++d) {
    auto f = amc::testing::random_form(rng, d);
    RatVector b(d + 1);
    for (int i = 0; i <= d; ++i) b(i) = apolar_pairing(BinaryForm::monomial(d, i), f)[0];
    CHECK(BinaryForm::from_divided_powers(b) == f);
    CHECK(f.divided_powers() == b);
  }
}

TEST_CASE("pairing with a power of a linear form evaluates") {
  CounterRng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = static_cast<int>(rng.uniform(0, 8));
    const int j = static_cast<int>(rng.uniform(0, d));
    auto Fj = amc::testing::random_form(rng, d);
    Rat al = rng.small_rat(6), be = rng.small_rat(6);
    auto lhs = apolar_pairing(Fj, BinaryForm::linear_power(al, be, d));
    CHECK(lhs.degree() == 0);
    CHECK(lhs[0] == Rat(factorial(d)) * Fj.eval(al, be));
    (void)j;
  }
}

TEST_CASE("pairing examples and errors") {
  CHECK(apolar_pairing(F("T^3"), F("s^4*t^2")).is_zero());
  CHECK(apolar_pairing(F("S"), F("s^2")) == F("2*s"));
  CHECK_THROWS_AS(apolar_pairing(F("S^3"), F("s^2")), Error);
}

TEST_CASE("pairing is bilinear and composes") {
  CounterRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = amc::testing::random_form(rng, 7);
    auto g = amc::testing::random_form(rng, 7);
    auto A = amc::testing::random_form(rng, 2);
    auto B = amc::testing::random_form(rng, 3);
    Rat c = rng.small_rat(4);
    CHECK(apolar_pairing(A, f + g * c) == apolar_pairing(A, f) + apolar_pairing(A, g) * c);
    CHECK(apolar_pairing(A * B, f) == apolar_pairing(A, apolar_pairing(B, f)));
  }
}

TEST_CASE("apolar ideal of the two-point sum in degree six") {
  ProjPoint p = ProjPoint::parse("0,0,1,0,1,0,0");
  auto f = point_to_form(p);
  auto pair = apolar_ideal(f);
  CHECK(pair.g1 == F("S^3*T - S*T^3"));
  CHECK(pair.g2 == F("S^4 - S^2*T^2 + T^4"));
  // The variant with -2 S^2 T^2 is not an annihilator.
  CHECK_FALSE(apolar_pairing(F("S^4 - 2*S^2*T^2 + T^4"), f).is_zero());
  CHECK(rnc_rank(p) == 4);
}

TEST_CASE("apolar ideal of a monomial") {
  for (int d = 2; d <= 10; ++d)
    for (int c = 0; c <= d; ++c) {
      auto f = BinaryForm::from_divided_powers(ProjPoint::torus_fixed(d, c).coords());
      auto pair = apolar_ideal(f);
      auto a = BinaryForm::monomial(d - c + 1, 0);      // S^{d-c+1}
      auto b = BinaryForm::monomial(c + 1, c + 1);      // T^{c+1}
      // Equal degrees: T^{c+1} comes first, as for c < d/2.
      if (a.degree() >= b.degree()) std::swap(a, b);
      CHECK(pair.g1 == a);
      CHECK(pair.g2 == b);
      CHECK(rnc_rank(ProjPoint::torus_fixed(d, c)) == std::min(c, d - c) + 1);
    }
}

TEST_CASE("apolar ideal of a power of a linear form") {
  CounterRng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = static_cast<int>(rng.uniform(2, 9));
    Rat al = rng.nonzero_rat(5), be = rng.small_rat(5);
    auto pair = apolar_ideal(BinaryForm::linear_power(al, be, d));
    CHECK(pair.d1() == 1);
    RatVector lin(2);
    lin << be, -al;
    CHECK(pair.g1 == BinaryForm(lin).normalized_leading());
  }
}

TEST_CASE("point to form examples") {
  auto f = point_to_form(ProjPoint::torus_fixed(6, 2));
  CHECK(f == BinaryForm::monomial(6, 2, Rat(1, 48)));
  CHECK(f[2] == Rat(1, 48));
  // nu_d point [a:b] maps to (a s + b t)^d / d!
  Rat a(2, 3), b(-5);
  RatVector x(7);
  for (int i = 0; i <= 6; ++i) x(i) = power(a, 6 - i) * power(b, i);
  CHECK(point_to_form(ProjPoint(x)) == BinaryForm::linear_power(a, b, 6) * Rat(1, 720));
  CHECK(rnc_rank(ProjPoint(x)) == 1);
  CHECK(form_to_point(point_to_form(ProjPoint(x))).coords() == x);
}

TEST_CASE("random forms: annihilation, Hilbert function, coprime generators") {
  CounterRng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = static_cast<int>(rng.uniform(1, 10));
    auto f = amc::testing::random_form(rng, d, 3);
    if (f.is_zero()) continue;
    auto pair = apolar_ideal(f);
    CHECK(pair.d1() <= pair.d2());
    CHECK(pair.d1() + pair.d2() == d + 2);
    if (pair.d1() <= d) CHECK(apolar_pairing(pair.g1, f).is_zero());
    if (pair.d2() <= d) CHECK(apolar_pairing(pair.g2, f).is_zero());
    CHECK(resultant(pair.g1, pair.g2) != 0);
    CHECK(pair.g1[pair.g1.first_nonzero()] == 1);
    CHECK(pair.g2[pair.g2.last_nonzero()] == 1);
    for (int e = 0; e <= d; ++e) CHECK(perp_dimension(f, e) == ci_dimension(pair.d1(), pair.d2(), e));
    // form_from_apolar recovers f up to scalar.
    auto back = form_from_apolar(pair.g1, pair.g2, d);
    CHECK(form_to_point(back).projectively_equal(form_to_point(f)));
  }
}

TEST_CASE("g2 has no monomial divisible by the leading monomial of g1") {
  CounterRng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = static_cast<int>(rng.uniform(4, 9));
    auto f = amc::testing::random_form(rng, d, 4);
    if (f.is_zero()) continue;
    auto pair = apolar_ideal(f);
    const int p = pair.g1.first_nonzero();
    const int s_exp = pair.d1() - p;
    for (int i = 0; i <= pair.d2(); ++i)
      if (pair.d2() - i >= s_exp && i >= p) CHECK(pair.g2[i] == 0);
  }
}

TEST_CASE("multiplicity types") {
  for (int d = 5; d <= 8; ++d) {
    auto e2 = apolar_ideal(point_to_form(ProjPoint::torus_fixed(d, 2)));
    CHECK(e2.g1 == F("T^3"));
    CHECK(e2.g2 == F("S^" + std::to_string(d - 1)));
    CHECK(apolar_ideal(point_to_form(ProjPoint::torus_fixed(d, d - 2))).g1 == F("S^3"));
    CHECK(multiplicity_type(e2) == MultiplicityType::triple);
    // p = e1 + e_d: g1 = S^2 T in the mirrored labeling; under this
    // convention e_{d-1} + e_0 plays that role.
    RatVector x = RatVector::Zero(d + 1);
    x(1) = 1;
    x(d) = 1;
    auto ds = apolar_ideal(point_to_form(ProjPoint(x)));
    CHECK(ds.d1() == 3);
    CHECK(multiplicity_type(ds) == MultiplicityType::double_simple);
  }
  CHECK(multiplicity_type(F("S^3 - S*T^2")) == MultiplicityType::three_simple);
  CHECK(multiplicity_type(F("S^2*T")) == MultiplicityType::double_simple);
  CHECK(multiplicity_type(F("(2*S - T)^3")) == MultiplicityType::triple);
  CHECK(multiplicity_type(F("S^3 + T^3")) == MultiplicityType::three_simple);
  CHECK_THROWS_AS(multiplicity_type(F("S^2")), Error);
  auto pair = make_apolar_pair(F("S^3 - S*T^2"), F("T^5"), 6);
  CHECK(multiplicity_type(pair) == MultiplicityType::three_simple);
}

TEST_CASE("gcd, division and factors") {
  auto g = binary_gcd(F("S^3 - S*T^2"), F("S^2 - 2*S*T + T^2"));
  CHECK(g == F("S - T"));
  CHECK(binary_gcd(F("S*T^2"), F("T^3")) == F("T^2"));
  CHECK(exact_divide(F("S^4 - T^4"), F("S^2 + T^2")) == F("S^2 - T^2"));
  CHECK_THROWS_AS(exact_divide(F("S^4 - T^4"), F("S + 2*T")), Error);
  CHECK(squarefree_part(F("S^2*T^3")) == F("S*T"));
  CHECK(resultant(F("S"), F("T")) != 0);
  CHECK(resultant(F("S^2 - T^2"), F("S^3 + T^3")) == 0);
  auto lins = rational_linear_factors(F("S^3 - S*T^2"));
  CHECK(lins.size() == 3);
  auto q = rational_quadratic_factor(F("(S^2 + T^2)*(S^2 + S*T + 3*T^2)"));
  REQUIRE(q);
  CHECK(divides(*q, F("(S^2 + T^2)*(S^2 + S*T + 3*T^2)")));
  CHECK(q->degree() == 2);
  CHECK_FALSE(rational_quadratic_factor(F("S^3 - 2*T^3")));
}

TEST_CASE("form parsing") {
  CHECK(F("s^2*t - t^3") == F("S^2*T - T^3"));
  CHECK_THROWS_AS(F("S*t"), Error);
  CHECK_THROWS_AS(F("S^2 + T"), Error);
  CHECK(parse_binary_form("0", 3) == BinaryForm::zero(3));
  CHECK(ProjPoint::parse("0,2,0").projectively_equal(ProjPoint::parse("0,1,0")));
  CHECK_THROWS_AS(ProjPoint::parse("0,0"), Error);
}
