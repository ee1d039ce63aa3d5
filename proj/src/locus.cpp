#include "amc/locus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace amc {

namespace upoly {

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

UPoly add(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

namespace {

std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& m) {
  const int dm = degree(m);
  if (dm < 0) throw Error("division by the zero polynomial");
  trim(a);
  UPoly q(a.size() > static_cast<std::size_t>(dm) ? a.size() - static_cast<std::size_t>(dm) : 0, Rat(0));
  const Rat lead = m[static_cast<std::size_t>(dm)];
  for (int da = degree(a); da >= dm; da = degree(a)) {
    const Rat f = a[static_cast<std::size_t>(da)] / lead;
    const auto shift = static_cast<std::size_t>(da - dm);
    q[shift] = f;
    for (int k = 0; k <= dm; ++k) a[shift + static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(k)];
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly monic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rat l = p.back();
  for (auto& c : p) c /= l;
  return p;
}

}  // namespace

UPoly rem(const UPoly& a, const UPoly& m) { return divmod(a, m).second; }
UPoly quot(const UPoly& a, const UPoly& m) { return divmod(a, m).first; }

UPoly derivative(const UPoly& p) {
  UPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(Rat(static_cast<long>(i)) * p[i]);
  trim(out);
  return out;
}

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0, b = b0;
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly squarefree_part(const UPoly& p) { return monic(quot(p, gcd(p, derivative(p)))); }

bool is_squarefree(const UPoly& p) { return degree(p) >= 0 && degree(gcd(p, derivative(p))) == 0; }

std::string to_string(const UPoly& p, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Rat c = p[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    first = false;
    if (i == 0 || c != 1) os << amc::to_string(c) << (i ? "*" : "");
    if (i > 0) os << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return first ? "0" : os.str();
}

}  // namespace upoly

namespace {

using Entry = UPoly;

Entry det_mod(const std::vector<std::vector<Entry>>& e, std::vector<std::size_t> rows, const std::vector<std::size_t>& cols,
              const UPoly& m) {
  if (rows.size() == 1) return e[rows[0]][cols[0]];
  const std::size_t r0 = rows.front();
  std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
  Entry acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Entry& a = e[r0][cols[k]];
    if (a.empty()) continue;
    std::vector<std::size_t> sub = cols;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
    Entry term = upoly::rem(upoly::mul(a, det_mod(e, rest, sub, m)), m);
    if (k % 2) for (auto& c : term) c = -c;
    acc = upoly::add(acc, term);
  }
  return acc;
}

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;)
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  return false;
}

std::vector<std::size_t> first_subset(std::size_t k) {
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  return s;
}

bool zero_dimensional(const GroebnerBasis& G, std::size_t n) {
  for (std::size_t v = 0; v < n; ++v) {
    bool hit = false;
    for (const auto& g : G.gens) {
      const auto& m = g.lead().mono;
      if (m[v] > 0 && m.degree() == m[v]) hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

// Standard monomials of a zero-dimensional ideal.
std::vector<Monomial> standard_monomials(const GroebnerBasis& G, std::size_t n, std::size_t cap) {
  auto reducible = [&](const Monomial& m) {
    for (const auto& g : G.gens)
      if (g.lead().mono.divides(m)) return true;
    return false;
  };
  std::vector<Monomial> out{Monomial(n)};
  std::set<std::vector<Monomial::Exp>> seen{Monomial(n).exponents()};
  for (std::size_t i = 0; i < out.size() && out.size() <= cap; ++i)
    for (std::size_t v = 0; v < n; ++v) {
      Monomial m = out[i] * Monomial::variable(n, v);
      if (reducible(m) || !seen.insert(m.exponents()).second) continue;
      out.push_back(m);
    }
  return out;
}

// Shape of a radical zero-dimensional ideal over a separating linear form u:
// the minimal polynomial of u and each coordinate as a polynomial in u.
struct Shape {
  UPoly minpoly;
  std::vector<UPoly> coords;
  bool radical = false;
};

std::optional<Shape> read_shape(const GroebnerBasis& G, std::size_t n, const Poly& u) {
  const auto stdm = standard_monomials(G, n, 400);
  if (stdm.size() > 400) return std::nullopt;
  const auto D = static_cast<Eigen::Index>(stdm.size());
  std::map<std::vector<Monomial::Exp>, Eigen::Index> index;
  for (Eigen::Index i = 0; i < D; ++i) index[stdm[static_cast<std::size_t>(i)].exponents()] = i;
  auto vec = [&](const Poly& f) {
    RatVector v = RatVector::Zero(D);
    for (const auto& t : f.terms()) v(index.at(t.mono.exponents())) = t.coeff;
    return v;
  };
  // Powers of u until they become dependent.
  std::vector<Poly> powers{Poly::constant(u.ring(), Rat(1))};
  SpanBasis<Rat> span(D);
  span.insert(vec(powers[0]));
  Shape out;
  for (;;) {
    Poly next = normal_form(powers.back() * u, G.gens);
    RatVector v = vec(next);
    if (span.contains(v)) {
      RatMatrix a(D, static_cast<Eigen::Index>(powers.size()));
      for (std::size_t j = 0; j < powers.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = vec(powers[j]);
      auto lam = solve_exact(a, v);
      if (!lam) return std::nullopt;
      out.minpoly.assign(powers.size() + 1, Rat(0));
      for (std::size_t j = 0; j < powers.size(); ++j) out.minpoly[j] = -(*lam)(static_cast<Eigen::Index>(j));
      out.minpoly.back() = Rat(1);
      break;
    }
    span.insert(v);
    powers.push_back(std::move(next));
  }
  out.radical = static_cast<Eigen::Index>(powers.size()) == D && upoly::is_squarefree(out.minpoly);
  if (!out.radical) return out;
  RatMatrix a(D, D);
  for (Eigen::Index j = 0; j < D; ++j) a.col(j) = vec(powers[static_cast<std::size_t>(j)]);
  for (std::size_t v = 0; v < n; ++v) {
    auto lam = solve_exact(a, vec(normal_form(Poly::variable(u.ring(), v), G.gens)));
    if (!lam) return std::nullopt;
    UPoly c(static_cast<std::size_t>(D));
    for (Eigen::Index j = 0; j < D; ++j) c[static_cast<std::size_t>(j)] = (*lam)(j);
    upoly::trim(c);
    out.coords.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool verify_algebraic_rank(const AlgebraicQuadric& q, int t) {
  if (q.parts.empty() || !upoly::is_squarefree(q.minpoly)) return false;
  if (static_cast<int>(q.parts.size()) > q.degree()) return false;
  const Ring& R = q.parts.front().ring();
  const std::size_t n = R->arity();
  std::vector<RatMatrix> mats;
  for (const auto& p : q.parts) {
    if (p.ring() != R && !p.ring()->same_as(*R)) return false;
    if (!p.is_zero() && p.total_degree() != 2) return false;
    mats.push_back(p.is_zero() ? RatMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
                               : quadric_matrix(p));
  }
  std::vector<std::vector<Entry>> e(n, std::vector<Entry>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Entry x;
      for (std::size_t j = 0; j < mats.size(); ++j) {
        if (x.size() <= j) x.resize(j + 1, Rat(0));
        x[j] = mats[j](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
      upoly::trim(x);
      e[r][c] = upoly::rem(x, q.minpoly);
    }
  const auto k = static_cast<std::size_t>(t + 1);
  if (k > n) return true;
  auto rows = first_subset(k);
  do {
    auto cols = rows;
    do {
      if (!det_mod(e, rows, cols, q.minpoly).empty()) return false;
    } while (next_subset(cols, n));
  } while (next_subset(rows, n));
  return true;
}

std::vector<AlgebraicQuadric> sample_rank_locus(const std::vector<Poly>& space, int t, CounterRng& rng,
                                                const LocusOptions& opts, std::stop_token stop) {
  std::vector<AlgebraicQuadric> out;
  const std::size_t w = space.size();
  if (w == 0) return out;
  if (w == 1) {
    if (quad_rank(space[0]) <= t) out.push_back({{Rat(0), Rat(1)}, {space[0]}});
    return out;
  }
  const auto G = generic_matrix(space);
  std::vector<Poly> mins;
  for (auto& m : minors(G, t + 1, stop)) mins.push_back(std::move(m.det));
  if (stop.stop_requested()) return out;
  if (mins.empty()) {
    for (const auto& q : space) out.push_back({{Rat(0), Rat(1)}, {q}});
    return out;
  }

  const std::size_t n = w - 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  const Ring C = make_ring(names, MonomialOrder::degrevlex());
  GroebnerLimits limits;
  limits.max_pairs = opts.max_pairs;
  limits.max_coeff_bits = opts.max_coeff_bits;

  for (int attempt = 0; attempt < opts.attempts && !stop.stop_requested(); ++attempt) {
    // Coordinate chart a_j = 1, cycling j from the last coordinate.
    const std::size_t j = (w - 1 + w - static_cast<std::size_t>(opts.first_chart + attempt) % w) % w;
    std::vector<Poly> images;
    for (std::size_t k = 0, v = 0; k < w; ++k)
      images.push_back(k == j ? Poly::constant(C, Rat(1)) : Poly::variable(C, v++));
    std::vector<Poly> base;
    for (const auto& m : mins) {
      Poly p = substitute(m, images);
      if (!p.is_zero()) base.push_back(std::move(p));
    }
    Poly u(C);
    for (std::size_t v = 0; v < n; ++v) u += Rat(rng.uniform(1, 9)) * Poly::variable(C, v);
    for (std::size_t r = 0; r <= n && !stop.stop_requested(); ++r) {
      std::vector<Poly> gens = base;
      for (std::size_t s = 0; s < r; ++s) {
        Poly l = Poly::constant(C, Rat(rng.uniform(-5, 5)));
        for (std::size_t v = 0; v < n; ++v) l += Rat(rng.uniform(-5, 5)) * Poly::variable(C, v);
        gens.push_back(std::move(l));
      }
      auto gb = buchberger(gens, limits, stop);
      if (!gb.complete() || gb.is_unit()) break;
      if (!zero_dimensional(gb, n)) continue;
      auto shape = read_shape(gb, n, u);
      if (shape && !shape->radical) {
        // Pass to the radical through the squarefree part of u's minimal polynomial.
        UPoly sq = upoly::squarefree_part(shape->minpoly);
        Poly sp(C), upow = Poly::constant(C, Rat(1));
        for (std::size_t i = 0; i < sq.size(); ++i, upow = upow * u) sp += sq[i] * upow;
        gens.push_back(sp);
        gb = buchberger(gens, limits, stop);
        if (!gb.complete() || gb.is_unit()) break;
        shape = read_shape(gb, n, u);
      }
      if (!shape || !shape->radical) break;
      const int deg = upoly::degree(shape->minpoly);
      AlgebraicQuadric q;
      q.minpoly = shape->minpoly;
      q.parts.assign(static_cast<std::size_t>(deg), Poly(space[0].ring()));
      for (std::size_t k = 0; k < w; ++k) {
        // a_k as a polynomial in u.
        UPoly a;
        for (const auto& t : images[k].terms()) {
          if (t.mono.degree() == 0) {
            a = upoly::add(a, {t.coeff});
            continue;
          }
          std::size_t v = 0;
          while (t.mono[v] == 0) ++v;
          a = upoly::add(a, upoly::mul({t.coeff}, shape->coords[v]));
        }
        a = upoly::rem(a, q.minpoly);
        for (std::size_t j = 0; j < a.size(); ++j)
          if (a[j] != 0) q.parts[j] += a[j] * space[k];
      }
      out.push_back(std::move(q));
      break;
    }
  }
  return out;
}

}  // namespace amc
