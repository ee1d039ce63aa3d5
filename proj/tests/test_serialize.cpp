#include <doctest.h>

#include "amc/serialize.hpp"
#include "mutate.hpp"
#include "support.hpp"

using namespace amc;

namespace {

Target scheme(std::string_view label) { return Target(build_scheme(parse_scheme(label))); }

Json round_trip(const Json& j) { return Json::parse(j.dump(2)); }

void all_mutants_fail(const Json& cert) {
  auto mutants = amc::testing::witness_mutants(cert);
  CHECK(mutants.size() >= 8);
  for (const auto& m : mutants) {
    INFO(m.path);
    CHECK_FALSE(verify_certificate(m.cert));
  }
}

}  // namespace

TEST_CASE("rationals and polynomials as text") {
  CHECK(to_json(Rat(-3) / 4) == "-3/4");
  CHECK(rat_from_json(Json("5/10")) == Rat(1) / 2);
  CHECK_THROWS(rat_from_json(Json(3)));
  Ring R = make_ring("x", 3);
  Poly p = parse_poly("3/2*x0^2*x2 - x1", R);
  CHECK(poly_from_json(to_json(p), R) == p);
  CHECK(ring_from_json(to_json(R))->same_as(*R));
  RatMatrix m(2, 2);
  m << Rat(1), Rat(-1) / 3, Rat(0), Rat(7);
  CHECK(matrix_from_json(to_json(m)) == m);
}

TEST_CASE("QR certificate round trip and mutation") {
  auto t = scheme("mono:d=6,c=3");
  auto d = certify_qr(t, 3);
  REQUIRE(d.positive);
  Json j = round_trip(to_json(*d.positive));
  CHECK(j["cert_version"] == cert_version);
  auto back = qr_certificate_from_json(j);
  CHECK(verify(back, &t.scheme));
  CHECK(to_json(back).dump() == j.dump());
  CHECK(verify_certificate(j));
  all_mutants_fail(j);

  Json wrong = j;
  wrong["cert_version"] = 2;
  CHECK_FALSE(verify_certificate(wrong));
  wrong = j;
  wrong["scheme"] = "mono:d=6,c=2";
  CHECK_FALSE(verify_certificate(wrong));
  wrong = j;
  wrong["k"] = 2;
  CHECK_FALSE(verify_certificate(wrong));
}

TEST_CASE("certificates with algebraic families") {
  auto t = scheme("apolar:S^3-S*T^2,T^4");
  auto d = certify_qr(t, 3);
  REQUIRE(d.positive);
  REQUIRE_FALSE(d.positive->algebraic.empty());
  Json j = round_trip(to_json(*d.positive));
  CHECK(verify_certificate(j));
  all_mutants_fail(j);
}

TEST_CASE("obstruction certificate round trip and mutation") {
  auto t = scheme("mono:d=6,c=2");
  auto d = certify_qr(t, 3);
  REQUIRE(d.negative);
  Json j = round_trip(to_json(*d.negative));
  auto back = obstruction_certificate_from_json(j);
  CHECK(back.forms.size() == 2);
  CHECK(verify(back, &t.scheme));
  CHECK(to_json(back).dump() == j.dump());
  all_mutants_fail(j);
  Json wrong = j;
  wrong["k"] = 4;
  CHECK_FALSE(verify_certificate(wrong));
}

TEST_CASE("Rabinowitsch witnesses replay their run") {
  ObstructionCertificate c;
  auto t = scheme("mono:d=5,c=2");
  auto b = RankBudget::named("quick");
  b.rabinowitsch = true;
  NegativeSearch neg;
  extend_with_rabinowitsch(neg, t, 3, b);
  REQUIRE_FALSE(neg.forms.empty());
  c.k = 3;
  c.scheme = t.scheme.spec.label();
  c.i2_basis = t.scheme.basis;
  c.forms = neg.forms;
  c.witnesses = neg.witnesses;
  Json j = round_trip(to_json(c));
  CHECK(verify_certificate(j));
  all_mutants_fail(j);
}

TEST_CASE("verify_json walks nested documents") {
  auto pos = certify_qr(scheme("mono:d=6,c=3"), 3);
  auto neg = certify_qr(scheme("mono:d=5,c=2"), 3);
  Json doc = {{"runs", {to_json(pos), to_json(neg)}}, {"note", "x"}};
  auto r = verify_json(round_trip(doc));
  CHECK(r.checked == 2);
  CHECK(r.ok());
  doc["runs"][1]["certificate"]["witnesses"][0]["scalar"] = "12345";
  r = verify_json(doc);
  CHECK(r.failures == std::vector<std::string>{"/runs/1/certificate"});
  CHECK_FALSE(verify_json(Json::object()).ok());
}

TEST_CASE("deterministic output") {
  auto a = to_json(delta(scheme("apolar:T^2*S+2*T^3,3*S^4-S^3*T+2*T^4"), 3)).dump(2);
  auto b = to_json(delta(scheme("apolar:T^2*S+2*T^3,3*S^4-S^3*T+2*T^4"), 3)).dump(2);
  CHECK(a == b);
}
