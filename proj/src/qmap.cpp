#include "amc/qmap.hpp"

#include "amc/rng.hpp"

#include <algorithm>
#include <map>

namespace amc {

Decomposition Decomposition::make(int d, int a) {
  if (a < 1 || 2 * a > d) throw Error("decomposition needs 1 <= a <= d/2");
  return {d, a, d - 2 * a};
}

std::vector<Decomposition> decompositions(int d) {
  std::vector<Decomposition> out;
  for (int a = 1; 2 * a <= d; ++a) out.push_back(Decomposition::make(d, a));
  return out;
}

namespace {

const BinaryForm kS = BinaryForm::monomial(1, 0);
const BinaryForm kT = BinaryForm::monomial(1, 1);

BinaryForm mirror(const BinaryForm& f) { return BinaryForm(RatVector(f.coeffs().reverse())); }

Poly linear_combination(const Ring& R, const RatVector& coords) {
  Poly l(R);
  for (Eigen::Index k = 0; k < coords.size(); ++k)
    if (coords(k) != 0) l += coords(k) * Poly::variable(R, static_cast<std::size_t>(k));
  return l;
}

bool proportional(const BinaryForm& s, const BinaryForm& t) {
  if (s.degree() != t.degree()) return false;
  RatMatrix m(2, s.degree() + 1);
  m.row(0) = s.coeffs().transpose();
  m.row(1) = t.coeffs().transpose();
  return exact_rank(m) < 2;
}

bool proportional(const Poly& s, const Poly& t) {
  if (s.is_zero() || t.is_zero()) return true;
  const Rat r = t.lead().coeff / s.lead().coeff;
  return (t - r * s).is_zero();
}

}  // namespace

// ---------------------------------------------------------------- LinearSystem

LinearSystem::LinearSystem(const Scheme& s) : ring_(s.ring), param_ring_(s.param_ring), curve_(s.is_curve()) {
  const auto n = static_cast<Eigen::Index>(s.components.size());
  if (n == 0) throw Error("scheme without coordinates");
  if (curve_) {
    degree_ = s.components.front().total_degree();
    for (int i = 0; i <= degree_; ++i)
      monomials_.push_back({static_cast<Monomial::Exp>(degree_ - i), static_cast<Monomial::Exp>(i)});
  } else {
    std::map<std::vector<Monomial::Exp>, int> seen;
    for (const auto& c : s.components)
      for (const auto& t : c.terms()) seen.emplace(t.mono.exponents(), 0);
    for (const auto& [e, _] : seen) monomials_.push_back(e);
  }
  std::map<std::vector<Monomial::Exp>, Eigen::Index> col;
  for (std::size_t k = 0; k < monomials_.size(); ++k) col[monomials_[k]] = static_cast<Eigen::Index>(k);
  RatMatrix rows = RatMatrix::Zero(n, static_cast<Eigen::Index>(monomials_.size()));
  for (Eigen::Index r = 0; r < n; ++r)
    for (const auto& t : s.components[static_cast<std::size_t>(r)].terms()) {
      auto it = col.find(t.mono.exponents());
      if (it == col.end()) throw Error("curve components must share one degree");
      rows(r, it->second) = t.coeff;
    }
  solver_ = CoordinateSolver<Rat>(rows);
  annihilator_ = curve_ ? nullspace(rows) : RatMatrix(0, 0);
}

std::optional<Poly> LinearSystem::linear_form(const Poly& u) const {
  RatVector v = RatVector::Zero(static_cast<Eigen::Index>(monomials_.size()));
  for (const auto& t : u.terms()) {
    auto it = std::find(monomials_.begin(), monomials_.end(), t.mono.exponents());
    if (it == monomials_.end()) return std::nullopt;
    v(it - monomials_.begin()) = t.coeff;
  }
  auto c = solver_.coords(v);
  if (!c) return std::nullopt;
  return linear_combination(ring_, *c);
}

std::optional<Poly> LinearSystem::linear_form(const BinaryForm& u) const {
  if (!curve_) throw Error("binary forms only apply to curve targets");
  if (u.degree() != degree_) throw Error("form degree differs from the embedding degree");
  auto c = solver_.coords(u.coeffs());
  if (!c) return std::nullopt;
  return linear_combination(ring_, *c);
}

bool LinearSystem::contains(const BinaryForm& u) const { return u.degree() == degree_ && solver_.contains(u.coeffs()); }

// ---------------------------------------------------------------- Target

Target::Target(Scheme s) : scheme(std::move(s)), system(scheme), space(scheme.basis) {}

bool Target::monomial() const {
  return scheme.spec.kind == SchemeKind::rnc || scheme.spec.kind == SchemeKind::monomial_projection;
}

// ---------------------------------------------------------------- Q-map

namespace {

QMapResult finish(const Target& target, Poly l1, Poly l2, Poly l3) {
  QWitness w{std::move(l1), std::move(l2), std::move(l3)};
  QMapResult out{QuadraticForm(w.quadric()), w};
  if (out.q.poly().is_zero()) {
    out.q.coord = RatVector::Zero(static_cast<Eigen::Index>(target.dim()));
    return out;
  }
  out.q.coord = target.space.coords(out.q.poly());
  if (!out.q.coord) throw Error("Q-map output is not in the quadric space of the target");
  return out;
}

}  // namespace

QMapResult qab(const Decomposition& dec, const QTriple& tr, const Target& target) {
  if (2 * dec.a + dec.b != dec.d || dec.a < 1 || dec.b < 0) throw Error("invalid decomposition");
  if (tr.s.degree() != dec.a || tr.t.degree() != dec.a || tr.h.degree() != dec.b)
    throw Error("triple degrees do not match the decomposition");
  if (tr.h.is_zero()) throw Error("degenerate triple: h is zero");
  if (tr.s.is_zero() || tr.t.is_zero() || proportional(tr.s, tr.t)) throw Error("degenerate triple: s and t are proportional");
  const auto& sys = target.system;
  auto l1 = sys.linear_form(tr.s * tr.s * tr.h);
  auto l2 = sys.linear_form(tr.t * tr.t * tr.h);
  auto l3 = sys.linear_form(tr.s * tr.t * tr.h);
  if (!l1 || !l2 || !l3) throw Error("linear-system violation: a product leaves the embedding");
  return finish(target, std::move(*l1), std::move(*l2), std::move(*l3));
}

QMapResult qmap_poly(const Target& target, const Poly& s, const Poly& t, const Poly& h) {
  if (h.is_zero()) throw Error("degenerate triple: h is zero");
  if (proportional(s, t)) throw Error("degenerate triple: s and t are proportional");
  const auto& sys = target.system;
  auto l1 = sys.linear_form(s * s * h);
  auto l2 = sys.linear_form(t * t * h);
  auto l3 = sys.linear_form(s * t * h);
  if (!l1 || !l2 || !l3) throw Error("linear-system violation: a product leaves the embedding");
  return finish(target, std::move(*l1), std::move(*l2), std::move(*l3));
}

// ---------------------------------------------------------------- identity lemmas

QTriple balanced_triple(int d, int i, int j, int k) {
  if (k < 1 || i < 0 || j > d || i >= j - k || (i + j + k) % 2 != 0) throw Error("index constraints violated");
  const int e = (j - i - k) / 2;
  const int b = d - 2 * e;
  return {BinaryForm::monomial(e, 0), BinaryForm::monomial(e, e), BinaryForm::monomial(b, i) + BinaryForm::monomial(b, i + k)};
}

QTriple outer_five_triple(int d, int i, const Rat& a) {
  if (i < 0 || i + 6 > d) throw Error("index constraints violated");
  const int b = d - 4;
  BinaryForm h = BinaryForm::monomial(b, i) - BinaryForm::monomial(b, i + 1) * (Rat(2) * a) +
                 BinaryForm::monomial(b, i + 2) * (Rat(2) * a * a);
  return {BinaryForm::monomial(2, 0), BinaryForm::monomial(2, 1) + BinaryForm::monomial(2, 2) * a, h};
}

QTriple inner_five_triple(int d, int i, const Rat& a) {
  if (i < 0 || i + 5 > d) throw Error("index constraints violated");
  const int b = d - 4;
  BinaryForm h = BinaryForm::monomial(b, i) - BinaryForm::monomial(b, i + 1) * (Rat(2) * a);
  return {BinaryForm::monomial(2, 0) + BinaryForm::monomial(2, 1) * a, BinaryForm::monomial(2, 2), h};
}

bool LemmaIdentity::verify(const QuadricSpace& space) const {
  Poly sum(target.ring());
  for (const auto& p : pieces) {
    if (quad_rank(p) > 3 || !space.contains(p)) return false;
    sum += p;
  }
  return (sum - target).is_zero();
}

namespace {

// Square differences x_p x_q - x_m^2 with p + q = 2m, avoiding c.
std::vector<Poly> square_differences(const Ring& R, int d, int c) {
  auto slot = [&](int i) { return Poly::variable(R, static_cast<std::size_t>(i < c ? i : i - 1)); };
  std::vector<Poly> out;
  for (int m = 1; m < d; ++m)
    for (int p = 0; p < m; ++p) {
      const int q = 2 * m - p;
      if (q > d || p == c || q == c || m == c) continue;
      out.push_back(slot(p) * slot(q) - slot(m) * slot(m));
    }
  return out;
}

LemmaIdentity solve_identity(std::string lemma, std::vector<int> indices, Poly target, const std::vector<Poly>& pool) {
  const Ring& R = target.ring();
  const auto n = static_cast<Eigen::Index>(sym2_size(R->arity()));
  RatMatrix a(n, static_cast<Eigen::Index>(pool.size()));
  for (std::size_t k = 0; k < pool.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = quadric_vector(pool[k]);
  auto x = solve_exact(a, quadric_vector(target));
  if (!x) throw Error("no rank-3 decomposition found for " + target.to_string());
  LemmaIdentity out{std::move(lemma), std::move(indices), std::move(target), {}};
  for (std::size_t k = 0; k < pool.size(); ++k)
    if ((*x)(static_cast<Eigen::Index>(k)) != 0) out.pieces.push_back((*x)(static_cast<Eigen::Index>(k)) * pool[k]);
  return out;
}

}  // namespace

std::vector<LemmaIdentity> lemma_identity_gens(int d, int c) {
  if (d < 5 || c < 1 || c > d - 1) throw Error("identity lemmas need d >= 5 and 1 <= c <= d-1");
  SchemeSpec spec;
  spec.kind = SchemeKind::monomial_projection;
  spec.d = d;
  spec.c = c;
  Target target(build_scheme(spec));
  const Ring& R = target.scheme.ring;
  auto x = [&](int i) {
    if (i == c) throw Error("index constraints violated");
    return Poly::variable(R, static_cast<std::size_t>(i < c ? i : i - 1));
  };
  const auto binomials = square_differences(R, d, c);
  std::vector<LemmaIdentity> out;

  for (int k = 1; k <= d; ++k)
    for (int i = 0; i <= d; ++i)
      for (int j = i + k + 1; j <= d; ++j) {
        if ((i + j + k) % 2) continue;
        const int m1 = (i + j - k) / 2, m2 = (i + j + k) / 2;
        const std::vector<int> idx{i, i + k, j - k, j, m1, m2};
        if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
        Poly t = x(i) * x(j) + x(i + k) * x(j - k) - Rat(2) * x(m1) * x(m2);
        if (t.is_zero()) continue;
        std::vector<Poly> pool = binomials;
        pool.push_back(qab(Decomposition::make(d, (j - i - k) / 2), balanced_triple(d, i, j, k), target).q.poly());
        out.push_back(solve_identity("balanced", {i, j, k}, std::move(t), pool));
      }

  auto with_sweep = [&](auto make_triple, int i, std::vector<Rat> values) {
    std::vector<Poly> pool = binomials;
    for (const auto& a : values) pool.push_back(qab(Decomposition::make(d, 2), make_triple(d, i, a), target).q.poly());
    return pool;
  };
  const std::vector<Rat> sweep{Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(3), Rat(-3)};
  const int i3 = c - 3;
  if (i3 >= 0 && i3 + 6 <= d) {
    Poly t = x(i3) * x(i3 + 5) - x(i3 + 1) * x(i3 + 4);
    out.push_back(solve_identity("outer-five", {i3}, std::move(t), with_sweep(outer_five_triple, i3, sweep)));
  }
  const int i4 = c - 1;
  if (i4 >= 0 && i4 + 5 <= d) {
    Poly t = x(i4) * x(i4 + 5) - x(i4 + 2) * x(i4 + 3);
    out.push_back(solve_identity("inner-five", {i4}, std::move(t), with_sweep(inner_five_triple, i4, sweep)));
  }
  return out;
}

// ---------------------------------------------------------------- three points

QTriple three_point_family(int d, int family, const Rat& g0, const Rat& g1, const Rat& g2) {
  const BinaryForm S = kS, T = kT;
  const BinaryForm S2 = S * S, ST = S * T, T2 = T * T;
  if (d == 6) {
    switch (family) {
      case 1: return {S2 - T2, ST * g0 + T2 * g1, S2 * (Rat(2) * g0 * g1) - ST * (g0 * g0 + g1 * g1)};
      case 2:
        return {S2 - ST, ST * g0 + T2 * g1,
                S2 * (-g0 * g0 - Rat(2) * g0 * g1) + ST * (g1 * g1) + T2 * ((g0 + g1) * (g0 + g1))};
      case 3:
        return {S2 + ST, ST * (-g0) + T2 * g1,
                S2 * (-g0 * g0 - Rat(2) * g0 * g1) - ST * (g1 * g1) + T2 * ((g0 + g1) * (g0 + g1))};
    }
  } else if (d == 7) {
    const BinaryForm cubic = S * S * S - S * T * T;
    const Rat u = (g1 + g0) * (g1 + g0);
    switch (family) {
      case 1:
        return {S2 - T2, ST * g0 + T2 * g1,
                cubic * g2 - S2 * T * (Rat(2) * g0 * g1) + S * T2 * (g0 * g0 + g1 * g1)};
      case 2:
        return {S2 - ST, ST * g1 + T2 * g0,
                cubic * g2 + (S2 * T + S * T2) * (u - g0 * g0) - (T2 * T + S * T2) * u};
      case 3:
        return {S2 + ST, ST * (-g1) + T2 * g0,
                cubic * g2 + (S2 * T - S * T2) * (u - g0 * g0) - (T2 * T - S * T2) * u};
    }
  }
  throw Error("three-point families exist for d = 6, 7 and family 1..3");
}

// ---------------------------------------------------------------- harvest

namespace {

class Collector {
 public:
  Collector(const Target& t, int max_rank) : target_(t), span_(static_cast<Eigen::Index>(t.dim())) {
    out_.target_dim = t.dim();
    out_.max_rank = max_rank;
  }

  bool full() const { return out_.items.size() == out_.target_dim; }

  void offer(const Poly& q, const std::string& source, std::optional<QWitness> w = std::nullopt) {
    if (full() || q.is_zero()) return;
    auto c = target_.space.coords(q);
    if (!c || span_.contains(*c)) return;
    const int r = quad_rank(q);
    if (r > out_.max_rank) return;
    span_.insert(*c);
    out_.items.push_back({q, *c, r, source, std::move(w)});
  }

  void offer(const QMapResult& r, const std::string& source) { offer(r.q.poly(), source, r.witness); }

  Harvest take() { return std::move(out_); }
  Harvest& result() { return out_; }

 private:
  const Target& target_;
  SpanBasis<Rat> span_;
  Harvest out_;
};

template <class F>
void try_qmap(Collector& col, const std::string& source, F&& make) {
  try {
    col.offer(make(), source);
  } catch (const Error&) {
    // Triples outside the linear system are simply skipped.
  }
}

std::vector<Rat> sweep_values(long height) {
  std::vector<Rat> out;
  for (long den = 1; den <= 2; ++den)
    for (long num = -height; num <= height; ++num)
      if (num != 0 && (den == 1 || num % den != 0)) out.emplace_back(num, den);
  std::stable_sort(out.begin(), out.end(), [](const Rat& a, const Rat& b) { return abs(a) < abs(b); });
  return out;
}

BinaryForm random_binary(CounterRng& rng, int degree, long height) {
  RatVector c(degree + 1);
  for (int i = 0; i <= degree; ++i) c(i) = Rat(rng.uniform(-height, height));
  return BinaryForm(c);
}

// Forms w of degree e with f_k * w in the linear system for every k.
RatMatrix multiplier_space(const LinearSystem& sys, const std::vector<BinaryForm>& fs, int e) {
  const RatMatrix& phi = sys.annihilator();
  const auto r = phi.cols();
  RatMatrix cond = RatMatrix::Zero(static_cast<Eigen::Index>(fs.size()) * r, e + 1);
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (int j = 0; j <= e; ++j) {
      const BinaryForm u = fs[k] * BinaryForm::monomial(e, j);
      for (Eigen::Index q = 0; q < r; ++q)
        cond(static_cast<Eigen::Index>(k) * r + q, j) = u.coeffs().dot(phi.col(q));
    }
  if (cond.rows() == 0) return RatMatrix::Identity(e + 1, e + 1);
  return nullspace(cond);
}

void basis_and_binomials(Collector& col, const Target& target, int max_rank) {
  for (const auto& q : target.scheme.basis)
    if (quad_rank(q) <= max_rank) col.offer(q, "basis");
  const Ring& R = target.scheme.ring;
  const auto n = R->arity();
  auto z = [&](std::size_t i) { return Poly::variable(R, i); };
  for (std::size_t m = 0; m < n && !col.full(); ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (i != m && j != m) col.offer(z(i) * z(j) - z(m) * z(m), "square difference");
  if (max_rank < 4) return;
  for (std::size_t i = 0; i < n && !col.full(); ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = i; k < n; ++k)
        for (std::size_t l = k; l < n; ++l)
          if (!(i == k && j == l)) col.offer(z(i) * z(j) - z(k) * z(l), "binomial");
}

bool is_three_point(const Target& target) {
  const auto& par = target.scheme.param;
  if (!par) return false;
  const int d = par->d();
  return par->pair.g1.normalized_leading() == parse_binary_form("S^3 - S*T^2") &&
         par->pair.g2.normalized_leading() == BinaryForm::monomial(d - 1, d - 1);
}

void three_point_sweep(Collector& col, const Target& target, int family, long height) {
  const int d = target.scheme.spec.d;
  const auto dec = Decomposition::make(d, 2);
  const auto vals = sweep_values(height);
  const std::string source = "three-point family " + std::to_string(family);
  for (const auto& g0 : vals)
    for (const auto& g1 : vals) {
      if (col.full()) return;
      if (d == 6) {
        try_qmap(col, source, [&] { return qab(dec, three_point_family(d, family, g0, g1), target); });
      } else {
        for (long g2 = 1; g2 <= 2; ++g2)
          try_qmap(col, source, [&] { return qab(dec, three_point_family(d, family, g0, g1, Rat(g2)), target); });
      }
    }
}

void monomial_templates(Collector& col, const Target& target, long height) {
  const int d = target.scheme.spec.d;
  for (int k = 1; k <= d; ++k)
    for (int i = 0; i <= d; ++i)
      for (int j = i + k + 1; j <= d; ++j) {
        if ((i + j + k) % 2 || col.full()) continue;
        const auto dec = Decomposition::make(d, (j - i - k) / 2);
        try_qmap(col, "Q-map balanced", [&] { return qab(dec, balanced_triple(d, i, j, k), target); });
      }
  if (d < 5) return;
  const auto dec = Decomposition::make(d, 2);
  for (const auto& a : sweep_values(std::min(height, 3L)))
    for (int i = 0; i + 5 <= d; ++i) {
      if (col.full()) return;
      for (bool flip : {false, true}) {
        auto m = [&](QTriple t) { return flip ? QTriple{mirror(t.s), mirror(t.t), mirror(t.h)} : t; };
        if (i + 6 <= d) try_qmap(col, "Q-map outer-five", [&] { return qab(dec, m(outer_five_triple(d, i, a)), target); });
        try_qmap(col, "Q-map inner-five", [&] { return qab(dec, m(inner_five_triple(d, i, a)), target); });
      }
    }
}

// Random s, t with h solved from the linear conditions.
void solve_h_sampler(Collector& col, const Target& target, const HarvestBudget& budget, std::size_t& samples,
                     std::stop_token stop) {
  const int d = target.system.degree();
  CounterRng rng(budget.seed, 3);
  for (const auto& dec : decompositions(d)) {
    std::vector<std::pair<BinaryForm, BinaryForm>> pairs;
    for (int p = 0; p <= dec.a; ++p)
      for (int q = p + 1; q <= dec.a; ++q) pairs.emplace_back(BinaryForm::monomial(dec.a, p), BinaryForm::monomial(dec.a, q));
    for (int n = 0; n < budget.max_samples / static_cast<int>(decompositions(d).size()); ++n)
      pairs.emplace_back(random_binary(rng, dec.a, budget.height), random_binary(rng, dec.a, budget.height));
    for (const auto& [s, t] : pairs) {
      if (col.full() || stop.stop_requested()) return;
      if (proportional(s, t) || s.is_zero() || t.is_zero()) continue;
      ++samples;
      RatMatrix hs = multiplier_space(target.system, {s * s, t * t, s * t}, dec.b);
      std::vector<BinaryForm> hv;
      for (Eigen::Index k = 0; k < std::min<Eigen::Index>(hs.cols(), 6); ++k) hv.emplace_back(RatVector(hs.col(k)));
      for (std::size_t i = 0; i < hv.size(); ++i)
        for (std::size_t j = i; j < hv.size(); ++j) {
          const BinaryForm h = i == j ? hv[i] : hv[i] + hv[j];
          try_qmap(col, "Q-map (sampled)", [&] { return qab(dec, QTriple{s, t, h}, target); });
        }
    }
  }
}

void scroll_sampler(Collector& col, const Target& target) {
  const Ring& P = target.scheme.param_ring;
  const int a = target.scheme.spec.a, b = target.scheme.spec.b;
  auto st = [&](int e, int i) {
    std::vector<Monomial::Exp> ex{static_cast<Monomial::Exp>(e - i), static_cast<Monomial::Exp>(i), 0, 0};
    return Poly::monomial(P, Monomial(ex));
  };
  for (int e = 1; 2 * e <= std::max(a, b); ++e) {
    std::vector<Poly> hs;
    for (int i = 0; i <= a - 2 * e; ++i) hs.push_back(st(a - 2 * e, i) * Poly::variable(P, 2));
    for (int j = 0; j <= b - 2 * e; ++j) hs.push_back(st(b - 2 * e, j) * Poly::variable(P, 3));
    for (int p = 0; p <= e; ++p)
      for (int q = p + 1; q <= e; ++q)
        for (std::size_t i = 0; i < hs.size(); ++i)
          for (std::size_t j = i; j < hs.size(); ++j) {
            if (col.full()) return;
            const Poly h = i == j ? hs[i] : hs[i] + hs[j];
            try_qmap(col, "Q-map (scroll)", [&] { return qmap_poly(target, st(e, p), st(e, q), h); });
          }
  }
}

// L(ab) L(cd) - L(ad) L(cb) for a, c of degree e and b, d multipliers of both.
void two_by_two_sampler(Collector& col, const Target& target, const HarvestBudget& budget, std::size_t& samples,
                        std::stop_token stop) {
  const int d = target.system.degree();
  CounterRng rng(budget.seed, 4);
  for (int e = 1; e < d; ++e) {
    std::vector<std::pair<BinaryForm, BinaryForm>> pairs;
    for (int p = 0; p <= e; ++p)
      for (int q = p + 1; q <= e; ++q) pairs.emplace_back(BinaryForm::monomial(e, p), BinaryForm::monomial(e, q));
    for (int n = 0; n < budget.max_samples / (d - 1); ++n)
      pairs.emplace_back(random_binary(rng, e, budget.height), random_binary(rng, e, budget.height));
    for (const auto& [a, c] : pairs) {
      if (col.full() || stop.stop_requested()) return;
      if (a.is_zero() || c.is_zero() || proportional(a, c)) continue;
      ++samples;
      RatMatrix ws = multiplier_space(target.system, {a, c}, d - e);
      std::vector<BinaryForm> wv;
      for (Eigen::Index k = 0; k < std::min<Eigen::Index>(ws.cols(), 6); ++k) wv.emplace_back(RatVector(ws.col(k)));
      for (std::size_t i = 0; i < wv.size(); ++i)
        for (std::size_t j = i + 1; j < wv.size(); ++j) {
          auto lab = target.system.linear_form(a * wv[i]), lcd = target.system.linear_form(c * wv[j]);
          auto lad = target.system.linear_form(a * wv[j]), lcb = target.system.linear_form(c * wv[i]);
          if (!lab || !lcd || !lad || !lcb) continue;
          col.offer(*lab * *lcd - *lad * *lcb, "2x2 products");
        }
    }
  }
}

}  // namespace

Harvest rank3_harvest(const Target& target, const HarvestBudget& budget, std::stop_token stop) {
  Collector col(target, 3);
  basis_and_binomials(col, target, 3);
  const bool curve = target.scheme.is_curve();
  if (!col.full() && target.monomial()) monomial_templates(col, target, budget.height);
  if (!col.full() && is_three_point(target) && (target.scheme.spec.d == 6 || target.scheme.spec.d == 7))
    for (int f = 1; f <= 3; ++f) three_point_sweep(col, target, f, budget.height);
  std::size_t samples = 0;
  if (!col.full() && curve) solve_h_sampler(col, target, budget, samples, stop);
  if (!col.full() && !curve) scroll_sampler(col, target);
  col.result().samples = samples;
  return col.take();
}

Harvest rank4_harvest(const Target& target, const HarvestBudget& budget, std::stop_token stop) {
  Collector col(target, 4);
  basis_and_binomials(col, target, 4);
  std::size_t samples = 0;
  if (!col.full() && target.scheme.is_curve()) two_by_two_sampler(col, target, budget, samples, stop);
  if (!col.full()) {
    auto h3 = rank3_harvest(target, budget, stop);
    for (const auto& it : h3.items) col.offer(it.quadric, it.source, it.witness);
    samples += h3.samples;
  }
  col.result().samples = samples;
  return col.take();
}

Harvest three_point_family_harvest(const Target& target, int family, const HarvestBudget& budget) {
  Collector col(target, 3);
  three_point_sweep(col, target, family, budget.height);
  return col.take();
}

}  // namespace amc
