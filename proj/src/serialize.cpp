#include "amc/serialize.hpp"

namespace amc {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("certificate lacks field ") + key);
  return j.at(key);
}

std::vector<Poly> polys_from_json(const Json& j, const Ring& ring) {
  if (!j.is_array()) throw Error("expected an array of polynomials");
  std::vector<Poly> out;
  for (const auto& e : j) out.push_back(poly_from_json(e, ring));
  return out;
}

std::vector<std::size_t> indices_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an index array");
  std::vector<std::size_t> out;
  for (const auto& e : j) out.push_back(e.get<std::size_t>());
  return out;
}

void check_header(const Json& j, std::string_view type) {
  if (field(j, "cert_version").get<int>() != cert_version) throw Error("unsupported cert_version");
  if (field(j, "type").get<std::string>() != type) throw Error("certificate type mismatch");
}

Json upoly_json(const UPoly& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(to_json(c));
  return a;
}

Json bounds_search_json(const PositiveSearch& p) {
  Json alg = Json::array();
  for (const auto& a : p.algebraic) alg.push_back(to_json(a));
  Json items = Json::array();
  for (const auto& it : p.items) items.push_back(to_json(it));
  return {{"span", p.span}, {"dim", p.dim}, {"samples", p.samples}, {"quadrics", items}, {"algebraic", alg}};
}

Json forms_json(const NegativeSearch& n) {
  Json w = Json::array();
  for (std::size_t i = 0; i < n.forms.size(); ++i) {
    const auto& x = n.witnesses[i];
    Json e = {{"form", to_json(n.forms[i])},
              {"kind", x.kind == ObstructionWitness::Kind::minor ? "minor" : "rabinowitsch"}};
    if (x.kind == ObstructionWitness::Kind::minor) e["exponent"] = x.hit.exponent;
    w.push_back(e);
  }
  return {{"forms", w}, {"complete", n.complete}};
}

}  // namespace

Json to_json(const Rat& r) { return to_string(r); }
Json to_json(const Poly& p) { return p.to_string(); }

Json to_json(const std::vector<Poly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Ring& ring) { return {{"vars", ring->names()}, {"order", to_string(ring->order())}}; }

Json to_json(const ApolarPair& pair) {
  return {{"g1", pair.g1.to_string()}, {"g2", pair.g2.to_string()}, {"d1", pair.d1()}, {"d2", pair.d2()}, {"d", pair.d}};
}

Json to_json(const Scheme& s) {
  Json j = {{"scheme", s.spec.label()},
            {"kind", to_string(s.spec.kind)},
            {"ring", to_json(s.ring)},
            {"generators", to_json(s.basis)},
            {"dim_I2", s.dim_i2()},
            {"basis_source", s.basis_source}};
  if (s.param) {
    const auto& p = *s.param;
    j["scroll"] = {{"a", p.pair.d1() - 2}, {"b", p.pair.d2() - 2}};
    j["apolar"] = to_json(p.pair);
    Json comps = Json::array();
    for (const auto& c : s.components) comps.push_back(to_json(c));
    j["components"] = comps;
  } else if (s.spec.kind == SchemeKind::scroll) {
    j["scroll"] = {{"a", s.spec.a}, {"b", s.spec.b}};
  }
  return j;
}

Json to_json(const GroebnerBasis& gb) {
  return {{"ring", to_json(gb.ring)},
          {"basis", to_json(gb.gens)},
          {"status", to_string(gb.status)},
          {"pairs", gb.pairs_processed},
          {"pairs_to_zero", gb.pairs_reduced_to_zero}};
}

Json to_json(const SieveHit& hit) {
  return {{"form", to_json(hit.form)},     {"exponent", hit.exponent}, {"scalar", to_json(hit.scalar)},
          {"rows", hit.rows},              {"cols", hit.cols},         {"det", to_json(hit.det)},
          {"known_before", hit.known_before}};
}

Json to_json(const HarvestItem& item) {
  Json j = {{"quadric", to_json(item.quadric)},
            {"rank", item.rank},
            {"source", item.source},
            {"coord", to_strings(item.coord)}};
  if (item.witness)
    j["witness"] = {{"l1", to_json(item.witness->l1)}, {"l2", to_json(item.witness->l2)}, {"l3", to_json(item.witness->l3)}};
  return j;
}

Json to_json(const Harvest& h) {
  Json items = Json::array();
  for (const auto& it : h.items) items.push_back(to_json(it));
  return {{"items", items}, {"target_dim", h.target_dim}, {"max_rank", h.max_rank},
          {"samples", h.samples}, {"spans", h.spans()}};
}

Json to_json(const AlgebraicQuadric& q) { return {{"minpoly", upoly_json(q.minpoly)}, {"parts", to_json(q.parts)}}; }

Json to_json(const QRCertificate& c) {
  Json quadrics = Json::array();
  for (std::size_t i = 0; i < c.quadrics.size(); ++i)
    quadrics.push_back({{"poly", to_json(c.quadrics[i])}, {"rank", c.ranks.at(i)}, {"source", c.sources.at(i)}});
  Json alg = Json::array();
  for (const auto& a : c.algebraic) alg.push_back(to_json(a));
  const Ring& R = c.i2_basis.front().ring();
  return {{"cert_version", cert_version},
          {"type", "QRCertificate"},
          {"k", c.k},
          {"scheme", c.scheme},
          {"ring", to_json(R)},
          {"i2_basis", to_json(c.i2_basis)},
          {"quadrics", quadrics},
          {"algebraic", alg},
          {"basis_matrix", to_json(c.basis_matrix)}};
}

Json to_json(const ObstructionCertificate& c) {
  Json ws = Json::array();
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    const auto& w = c.witnesses[i];
    Json e;
    if (w.kind == ObstructionWitness::Kind::minor) {
      e = to_json(w.hit);
      e["kind"] = "minor";
    } else {
      e = {{"kind", "rabinowitsch"}, {"gb_pairs", w.gb_pairs}, {"known_before", w.hit.known_before}};
    }
    e["form"] = to_json(c.forms.at(i));
    ws.push_back(e);
  }
  const auto g = generic_matrix(c.i2_basis);
  return {{"cert_version", cert_version},
          {"type", "ObstructionCertificate"},
          {"k", c.k},
          {"scheme", c.scheme},
          {"ring", to_json(c.i2_basis.front().ring())},
          {"coefficient_ring", to_json(g.coeff_ring())},
          {"i2_basis", to_json(c.i2_basis)},
          {"witnesses", ws}};
}

Json to_json(const DeltaBounds& b) {
  return {{"t", b.t},
          {"dim", b.dim},
          {"lower", b.lower},
          {"upper", b.upper},
          {"exact", b.exact()},
          {"capped", b.capped},
          {"gap", b.exact() ? Json(b.dim - b.lower) : Json()},
          {"positive", bounds_search_json(b.positive)},
          {"negative", forms_json(b.negative)}};
}

Json to_json(const QRDecision& d) {
  Json j = {{"k", d.k}, {"status", to_string(d.status)}, {"dim", d.dim}};
  if (d.status == QRStatus::inconclusive) j["capped"] = d.capped;
  if (d.positive) j["certificate"] = to_json(*d.positive);
  if (d.negative) j["certificate"] = to_json(*d.negative);
  if (!d.positive && !d.negative) j["partial"] = {{"span", d.partial_span}, {"forms", d.partial_forms}};
  return j;
}

Json to_json(const RankIndex& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back(to_json(l));
  return {{"lower", r.lower}, {"upper", r.upper ? Json(*r.upper) : Json()}, {"exact", r.exact()}, {"levels", levels}};
}

Json to_json(const ScanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"scheme", e.scheme}, {"stratum", e.stratum}, {"rnc_rank", e.rnc_rank}, {"decision", to_json(e.decision)}});
  return {{"conjecture", r.conjecture}, {"entries", entries}};
}

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw Error("rationals are written as strings");
  return parse_rat(j.get<std::string>());
}

Ring ring_from_json(const Json& j) {
  return make_ring(field(j, "vars").get<std::vector<std::string>>(), parse_order(field(j, "order").get<std::string>()));
}

Poly poly_from_json(const Json& j, const Ring& ring) {
  if (!j.is_string()) throw Error("polynomials are written as strings");
  return parse_poly(j.get<std::string>(), ring);
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.front().size()) : 0;
  RatMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw Error("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rat_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

QRCertificate qr_certificate_from_json(const Json& j) {
  check_header(j, "QRCertificate");
  QRCertificate c;
  c.k = field(j, "k").get<int>();
  c.scheme = field(j, "scheme").get<std::string>();
  const Ring R = ring_from_json(field(j, "ring"));
  c.i2_basis = polys_from_json(field(j, "i2_basis"), R);
  for (const auto& q : field(j, "quadrics")) {
    c.quadrics.push_back(poly_from_json(field(q, "poly"), R));
    c.ranks.push_back(field(q, "rank").get<int>());
    c.sources.push_back(field(q, "source").get<std::string>());
  }
  for (const auto& a : field(j, "algebraic")) {
    AlgebraicQuadric q;
    for (const auto& x : field(a, "minpoly")) q.minpoly.push_back(rat_from_json(x));
    q.parts = polys_from_json(field(a, "parts"), R);
    c.algebraic.push_back(std::move(q));
  }
  c.basis_matrix = matrix_from_json(field(j, "basis_matrix"));
  return c;
}

ObstructionCertificate obstruction_certificate_from_json(const Json& j) {
  check_header(j, "ObstructionCertificate");
  ObstructionCertificate c;
  c.k = field(j, "k").get<int>();
  c.scheme = field(j, "scheme").get<std::string>();
  const Ring R = ring_from_json(field(j, "ring"));
  const Ring A = ring_from_json(field(j, "coefficient_ring"));
  c.i2_basis = polys_from_json(field(j, "i2_basis"), R);
  for (const auto& e : field(j, "witnesses")) {
    ObstructionWitness w;
    const auto kind = field(e, "kind").get<std::string>();
    w.hit.form = poly_from_json(field(e, "form"), A);
    w.hit.known_before = field(e, "known_before").get<std::size_t>();
    if (kind == "minor") {
      w.kind = ObstructionWitness::Kind::minor;
      w.hit.exponent = field(e, "exponent").get<unsigned>();
      w.hit.scalar = rat_from_json(field(e, "scalar"));
      w.hit.rows = indices_from_json(field(e, "rows"));
      w.hit.cols = indices_from_json(field(e, "cols"));
      w.hit.det = poly_from_json(field(e, "det"), A);
    } else if (kind == "rabinowitsch") {
      w.kind = ObstructionWitness::Kind::rabinowitsch;
      w.gb_pairs = field(e, "gb_pairs").get<std::size_t>();
    } else {
      throw Error("unknown witness kind " + kind);
    }
    c.forms.push_back(w.hit.form);
    c.witnesses.push_back(std::move(w));
  }
  return c;
}

bool verify_certificate(const Json& j) {
  try {
    const auto type = field(j, "type").get<std::string>();
    const Scheme scheme = build_scheme(parse_scheme(field(j, "scheme").get<std::string>()));
    if (type == "QRCertificate") return verify(qr_certificate_from_json(j), &scheme);
    if (type == "ObstructionCertificate") return verify(obstruction_certificate_from_json(j), &scheme);
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

VerifyReport verify_json(const Json& j) {
  VerifyReport out;
  auto walk = [&](auto&& self, const Json& node, const std::string& path) -> void {
    if (node.is_object()) {
      if (node.contains("cert_version")) {
        ++out.checked;
        if (!verify_certificate(node)) out.failures.push_back(path.empty() ? "/" : path);
        return;
      }
      for (const auto& [key, value] : node.items()) self(self, value, path + "/" + key);
    } else if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) self(self, node[i], path + "/" + std::to_string(i));
    }
  };
  walk(walk, j, "");
  return out;
}

}  // namespace amc
