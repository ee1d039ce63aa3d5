#include "amc/curvegen.hpp"

#include "amc/quadrics.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace amc {

std::vector<int> IdealBasis::degree_profile() const {
  std::vector<int> out;
  for (const auto& g : gens) out.push_back(g.total_degree());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Poly var(const Ring& R, int i) { return Poly::variable(R, static_cast<std::size_t>(i)); }

Poly monomial_st(const Ring& R, int a, int b) {
  std::vector<Monomial::Exp> e(R->arity(), 0);
  e[0] = static_cast<Monomial::Exp>(a);
  e[1] = static_cast<Monomial::Exp>(b);
  return Poly::monomial(R, Monomial(std::move(e)));
}

std::vector<std::string> x_names(int d, int skip) {
  std::vector<std::string> out;
  for (int i = 0; i <= d; ++i)
    if (i != skip) out.push_back("x" + std::to_string(i));
  return out;
}

OracleResult finish_oracle(const GroebnerBasis& gb, const Ring& sub) {
  OracleResult out;
  out.status = gb.status;
  out.pairs = gb.pairs_processed;
  out.basis.ring = sub;
  for (const auto& g : eliminated_part(gb, 1)) out.basis.gens.push_back(change_ring(g, sub));
  return out;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error("expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto k = s.find(sep, start);
    out.push_back(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

std::map<std::string, int> parse_keys(std::string_view body) {
  std::map<std::string, int> out;
  for (auto part : split(body, ',')) {
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw Error("expected key=value in '" + std::string(part) + "'");
    out[std::string(part.substr(0, eq))] = parse_int(part.substr(eq + 1));
  }
  return out;
}

int key(const std::map<std::string, int>& m, const std::string& k) {
  auto it = m.find(k);
  if (it == m.end()) throw Error("missing '" + k + "'");
  return it->second;
}

}  // namespace

std::vector<Poly> rnc_minors(const Ring& ring) {
  const int d = static_cast<int>(ring->arity()) - 1;
  if (d < 1) throw Error("rational normal curve needs at least two coordinates");
  std::vector<Poly> out;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out.push_back(var(ring, i) * var(ring, j + 1) - var(ring, i + 1) * var(ring, j));
  return out;
}

std::vector<IndexList> index_lists(int d, int c) {
  std::vector<IndexList> out;
  for (int t = 0; t <= 2 * d; ++t) {
    IndexList l{t, {}};
    for (int i = std::max(0, t - d); 2 * i <= t; ++i) {
      const int j = t - i;
      if (i != c && j != c) l.monomials.emplace_back(i, j);
    }
    if (!l.monomials.empty()) out.push_back(std::move(l));
  }
  return out;
}

std::vector<Poly> index_binomials(const Ring& ring, int d, int skip) {
  // Map curve index -> ring variable.
  std::vector<int> slot(static_cast<std::size_t>(d + 1), -1);
  int k = 0;
  for (int i = 0; i <= d; ++i)
    if (i != skip) slot[static_cast<std::size_t>(i)] = k++;
  if (static_cast<std::size_t>(k) != ring->arity()) throw Error("ring arity does not match the curve");
  std::vector<Poly> out;
  for (const auto& l : index_lists(d, skip)) {
    auto mono = [&](std::pair<int, int> ij) {
      return var(ring, slot[static_cast<std::size_t>(ij.first)]) * var(ring, slot[static_cast<std::size_t>(ij.second)]);
    };
    const Poly last = mono(l.monomials.back());
    for (std::size_t r = 0; r + 1 < l.monomials.size(); ++r) out.push_back(mono(l.monomials[r]) - last);
  }
  return out;
}

Parametrization parametrize_apolar(const ApolarPair& pair) {
  if (pair.d1() < 2) throw Error("center lies on the curve: the projection is not of the expected shape");
  Parametrization par;
  par.pair = pair;
  const int d1 = pair.d1(), d2 = pair.d2();
  for (int i = 0; i <= d1 - 2; ++i) par.components.push_back(pair.g2 * BinaryForm::monomial(d1 - 2, i));
  for (int j = 0; j <= d2 - 2; ++j) par.components.push_back(pair.g1 * BinaryForm::monomial(d2 - 2, j));
  par.split = d1 - 1;
  return par;
}

Parametrization parametrize_projection(const ProjPoint& p) {
  if (p.dim() < 2) throw Error("projection needs d >= 2");
  return parametrize_apolar(apolar_ideal(point_to_form(p)));
}

IdealBasis scroll_ideal(int a, int b, const Ring& ring) {
  if (a < 0 || b < 1 || a > b) throw Error("scroll S(a,b) needs 0 <= a <= b and b >= 1");
  if (ring->arity() != static_cast<std::size_t>(a + b + 2)) throw Error("scroll ring must have a+b+2 variables");
  std::vector<std::pair<int, int>> cols;
  for (int i = 0; i < a; ++i) cols.emplace_back(i, i + 1);
  for (int j = 0; j < b; ++j) cols.emplace_back(a + 1 + j, a + 2 + j);
  IdealBasis out{ring, {}};
  for (std::size_t p = 0; p < cols.size(); ++p)
    for (std::size_t q = p + 1; q < cols.size(); ++q)
      out.gens.push_back(var(ring, cols[p].first) * var(ring, cols[q].second) -
                         var(ring, cols[p].second) * var(ring, cols[q].first));
  return out;
}

IdealBasis projected_curve_quadrics(const Parametrization& par) {
  const int d = par.d(), d1 = par.pair.d1(), d2 = par.pair.d2();
  if (d1 < 3) throw Error("explicit quadrics need rank >= 3");
  if (d < 5) throw Error("explicit quadrics need d >= 5");
  Ring R = make_ring("z", static_cast<std::size_t>(d));
  IdealBasis out = scroll_ideal(d1 - 2, d2 - 2, R);
  const int a = d1 - 2, b = d2 - 2;
  auto x = [&](int i) { return var(R, i); };
  auto y = [&](int j) { return var(R, a + 1 + j); };
  // alpha^{2a-k} beta^k x^2, alpha^{a+b-k} beta^k x y, alpha^{2b-k} beta^k y^2
  auto xx = [&](const BinaryForm& f) {
    Poly q(R);
    for (int k = 0; k <= f.degree(); ++k)
      if (f[k] != 0) {
        const int i = std::max(0, k - a);
        q += f[k] * x(i) * x(k - i);
      }
    return q;
  };
  auto xy = [&](const BinaryForm& f) {
    Poly q(R);
    for (int k = 0; k <= f.degree(); ++k)
      if (f[k] != 0) {
        const int i = std::max(0, k - b);
        q += f[k] * x(i) * y(k - i);
      }
    return q;
  };
  auto yy = [&](const BinaryForm& f) {
    Poly q(R);
    for (int k = 0; k <= f.degree(); ++k)
      if (f[k] != 0) {
        const int i = std::max(0, k - b);
        q += f[k] * y(i) * y(k - i);
      }
    return q;
  };
  const auto& g1 = par.pair.g1;
  const auto& g2 = par.pair.g2;
  for (int j = 0; j <= d1 - 4; ++j) {
    const BinaryForm m = BinaryForm::monomial(d1 - 4, j);
    out.gens.push_back(xx(m * g1) - xy(m * g2));
  }
  for (int j = 0; j <= d2 - 4; ++j) {
    const BinaryForm m = BinaryForm::monomial(d2 - 4, j);
    out.gens.push_back(xy(m * g1) - yy(m * g2));
  }
  return out;
}

IdealBasis projected_curve_quadrics(const ProjPoint& p) { return projected_curve_quadrics(parametrize_projection(p)); }

IdealBasis monomial_projection_quadrics(int d, int c) {
  if (d < 5) throw Error("monomial projection quadrics need d >= 5");
  if (c < 1 || c > d - 1) throw Error("column index c must satisfy 1 <= c <= d-1");
  Ring R = make_ring(x_names(d, c));
  return {R, index_binomials(R, d, c)};
}

std::vector<Poly> quadrics_through(const Ring& ring, const std::vector<Poly>& components) {
  const std::size_t n = ring->arity();
  if (components.size() != n) throw Error("one component per coordinate expected");
  // Images of the degree-2 monomials; collect their monomial supports.
  std::vector<Poly> images;
  std::map<std::vector<Monomial::Exp>, Eigen::Index> column;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      images.push_back(components[i] * components[j]);
      for (const auto& t : images.back().terms())
        column.emplace(t.mono.exponents(), static_cast<Eigen::Index>(column.size()));
    }
  RatMatrix m = RatMatrix::Zero(static_cast<Eigen::Index>(column.size()), static_cast<Eigen::Index>(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k)
    for (const auto& t : images[k].terms()) m(column.at(t.mono.exponents()), static_cast<Eigen::Index>(k)) = t.coeff;
  RatMatrix ker = nullspace(m);
  std::vector<Poly> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) out.push_back(quadric_from_vector(ring, ker.col(c)));
  return out.empty() ? out : echelon_quadrics(ring, out);
}

std::vector<Poly> OracleResult::quadrics() const {
  std::vector<Poly> out;
  for (const auto& g : basis.gens)
    if (g.total_degree() == 2) out.push_back(g);
  return out;
}

OracleResult elimination_oracle(int d, int drop, std::optional<unsigned> truncate, const GroebnerLimits& limits,
                                std::stop_token stop) {
  if (d < 2 || d > 10) throw Error("elimination oracle supports 2 <= d <= 10");
  if (drop < 0 || drop > d) throw Error("dropped index out of range");
  std::vector<std::string> names{"x" + std::to_string(drop)};
  for (auto& n : x_names(d, drop)) names.push_back(n);
  Ring E = make_ring(names, MonomialOrder::elimination(1));
  Ring Std = make_ring("x", static_cast<std::size_t>(d + 1));
  std::vector<Poly> gens;
  for (const auto& m : rnc_minors(Std)) gens.push_back(change_ring(m, E));
  GroebnerLimits lim = limits;
  if (truncate) lim.truncate_degree = truncate;
  auto gb = buchberger(gens, lim, stop);
  return finish_oracle(gb, make_ring(x_names(d, drop)));
}

OracleResult elimination_oracle(int d, const RatMatrix& change, std::optional<unsigned> truncate,
                                const GroebnerLimits& limits, std::stop_token stop) {
  if (d < 2 || d > 10) throw Error("elimination oracle supports 2 <= d <= 10");
  if (change.rows() != d + 1 || change.cols() != d + 1) throw Error("change of coordinates has the wrong size");
  auto maybe_inv = inverse_exact(change);
  if (!maybe_inv) throw Error("change of coordinates is singular");
  const RatMatrix& inv = *maybe_inv;
  Ring Y = make_ring("y", static_cast<std::size_t>(d + 1), MonomialOrder::elimination(1));
  Ring Std = make_ring("x", static_cast<std::size_t>(d + 1));
  std::vector<Poly> images;
  for (int i = 0; i <= d; ++i) {
    Poly l(Y);
    for (int j = 0; j <= d; ++j)
      if (inv(i, j) != 0) l += inv(i, j) * var(Y, j);
    images.push_back(l);
  }
  std::vector<Poly> gens;
  for (const auto& m : rnc_minors(Std)) gens.push_back(substitute(m, images));
  GroebnerLimits lim = limits;
  if (truncate) lim.truncate_degree = truncate;
  auto gb = buchberger(gens, lim, stop);
  std::vector<std::string> sub;
  for (int i = 1; i <= d; ++i) sub.push_back("y" + std::to_string(i));
  return finish_oracle(gb, make_ring(sub));
}

RatMatrix adapted_change(const ProjPoint& p) {
  const int d = p.dim();
  const auto par = parametrize_projection(p);
  RatMatrix a = RatMatrix::Zero(d + 1, d + 1);
  int j = 0;
  while (p.coords()(j) == 0) ++j;
  a(0, j) = 1;
  for (int k = 0; k < d; ++k) a.row(k + 1) = par.components[static_cast<std::size_t>(k)].coeffs().transpose();
  return a;
}

IdealBasis union_trisecant_quadrics(const ProjPoint& p, const GroebnerLimits& limits) {
  if (p.dim() < 5) throw Error("the curve-and-trisecant scheme needs d >= 5");
  if (rnc_rank(p) != 3) throw Error("the curve-and-trisecant scheme needs a center of rank 3");
  auto res = elimination_oracle(p.dim(), adapted_change(p), 2u, limits);
  if (res.status == GbStatus::cap_exceeded || res.status == GbStatus::cancelled)
    throw Error("elimination did not finish within the configured limits");
  return {res.basis.ring, res.quadrics()};
}

std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::rnc: return "rnc";
    case SchemeKind::projected_curve: return "projected-curve";
    case SchemeKind::scroll: return "scroll";
    case SchemeKind::union_trisecant: return "curve-union-trisecant";
    case SchemeKind::monomial_projection: return "monomial-projection";
  }
  return "?";
}

std::string SchemeSpec::label() const {
  switch (kind) {
    case SchemeKind::rnc: return "rnc:d=" + std::to_string(d);
    case SchemeKind::monomial_projection: return "mono:d=" + std::to_string(d) + ",c=" + std::to_string(c);
    case SchemeKind::scroll: return "scroll:a=" + std::to_string(a) + ",b=" + std::to_string(b);
    case SchemeKind::projected_curve:
    case SchemeKind::union_trisecant:
      if (apolar) return "apolar:" + apolar->g1.to_string() + "," + apolar->g2.to_string();
      if (center) return "point:" + center->to_string();
      return to_string(kind);
  }
  return "?";
}

SchemeSpec parse_scheme(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("scheme must look like kind:arguments");
  const std::string_view kind = text.substr(0, colon), body = text.substr(colon + 1);
  SchemeSpec s;
  if (kind == "rnc") {
    s.kind = SchemeKind::rnc;
    s.d = body.find('=') == std::string_view::npos ? parse_int(body) : key(parse_keys(body), "d");
  } else if (kind == "mono" || kind == "monomial") {
    auto m = parse_keys(body);
    s.kind = SchemeKind::monomial_projection;
    s.d = key(m, "d");
    s.c = key(m, "c");
  } else if (kind == "scroll") {
    auto m = parse_keys(body);
    s.kind = SchemeKind::scroll;
    s.a = key(m, "a");
    s.b = key(m, "b");
    s.d = s.a + s.b;
  } else if (kind == "point") {
    s.kind = SchemeKind::projected_curve;
    s.center = ProjPoint::parse(body);
    s.d = s.center->dim();
  } else if (kind == "apolar") {
    auto parts = split(body, ',');
    if (parts.size() != 2) throw Error("apolar scheme needs two forms separated by a comma");
    const BinaryForm g1 = parse_binary_form(parts[0]), g2 = parse_binary_form(parts[1]);
    s.kind = SchemeKind::projected_curve;
    s.d = g1.degree() + g2.degree() - 2;
    s.apolar = make_apolar_pair(g1, g2, s.d);
  } else {
    throw Error("unknown scheme kind '" + std::string(kind) + "'");
  }
  return s;
}

Scheme build_scheme(const SchemeSpec& spec) {
  Scheme out;
  out.spec = spec;
  out.param_ring = make_ring({"S", "T"});
  const int d = spec.d;
  switch (spec.kind) {
    case SchemeKind::rnc: {
      if (d < 2) throw Error("rational normal curve needs d >= 2");
      out.ring = make_ring("x", static_cast<std::size_t>(d + 1));
      for (int i = 0; i <= d; ++i) out.components.push_back(monomial_st(out.param_ring, d - i, i));
      out.basis = index_binomials(out.ring, d, -1);
      out.basis_source = "index binomials";
      break;
    }
    case SchemeKind::monomial_projection: {
      auto ib = monomial_projection_quadrics(d, spec.c);
      out.ring = ib.ring;
      for (int i = 0; i <= d; ++i)
        if (i != spec.c) out.components.push_back(monomial_st(out.param_ring, d - i, i));
      out.basis = ib.gens;
      out.basis_source = "index binomials";
      break;
    }
    case SchemeKind::scroll: {
      out.param_ring = make_ring({"S", "T", "X", "Y"});
      out.ring = make_ring("z", static_cast<std::size_t>(spec.a + spec.b + 2));
      for (int i = 0; i <= spec.a; ++i)
        out.components.push_back(monomial_st(out.param_ring, spec.a - i, i) * var(out.param_ring, 2));
      for (int j = 0; j <= spec.b; ++j)
        out.components.push_back(monomial_st(out.param_ring, spec.b - j, j) * var(out.param_ring, 3));
      out.basis = scroll_ideal(spec.a, spec.b, out.ring).gens;
      out.basis_source = "scroll minors";
      break;
    }
    case SchemeKind::projected_curve:
    case SchemeKind::union_trisecant: {
      Parametrization par;
      if (spec.apolar) {
        par = parametrize_apolar(*spec.apolar);
        out.spec.center = form_to_point(form_from_apolar(spec.apolar->g1, spec.apolar->g2, d));
      } else if (spec.center) {
        par = parametrize_projection(*spec.center);
        out.spec.apolar = par.pair;
      } else {
        throw Error("projected curve needs a center or an apolar pair");
      }
      out.ring = make_ring("z", static_cast<std::size_t>(d));
      for (const auto& f : par.components) out.components.push_back(f.to_poly(out.param_ring));
      if (par.pair.d1() >= 3 && d >= 5) {
        out.basis = projected_curve_quadrics(par).gens;
        out.basis_source = "scroll minors and divisor quadrics";
      } else {
        auto res = elimination_oracle(d, adapted_change(*out.spec.center), 2u);
        // y_{k+1} is z_k.
        std::vector<Poly> images;
        for (int k = 0; k < d; ++k) images.push_back(var(out.ring, k));
        for (const auto& q : res.quadrics()) out.basis.push_back(substitute(q, images));
        out.basis_source = "elimination";
      }
      out.spec.kind = par.pair.d1() == 3 ? SchemeKind::union_trisecant : SchemeKind::projected_curve;
      out.param = std::move(par);
      break;
    }
  }
  return out;
}

}  // namespace amc
