#include "amc/quadrics.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace amc {

std::size_t sym2_size(std::size_t n) { return n * (n + 1) / 2; }

std::size_t sym2_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

namespace {

std::pair<std::size_t, std::size_t> quadric_pair(const Monomial& m) {
  if (m.degree() != 2) throw Error("not a quadratic form");
  std::size_t first = m.arity(), second = m.arity();
  for (std::size_t v = 0; v < m.arity(); ++v) {
    if (m[v] == 2) return {v, v};
    if (m[v] == 1) (first == m.arity() ? first : second) = v;
  }
  return {first, second};
}

}  // namespace

RatVector quadric_vector(const Poly& q) {
  const std::size_t n = q.ring()->arity();
  RatVector v = RatVector::Zero(static_cast<Eigen::Index>(sym2_size(n)));
  for (const auto& t : q.terms()) {
    auto [i, j] = quadric_pair(t.mono);
    v(static_cast<Eigen::Index>(sym2_index(n, i, j))) = t.coeff;
  }
  return v;
}

Poly quadric_from_vector(const Ring& ring, const RatVector& v) {
  const std::size_t n = ring->arity();
  if (static_cast<std::size_t>(v.size()) != sym2_size(n)) throw Error("quadric vector has the wrong length");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Rat& c = v(static_cast<Eigen::Index>(sym2_index(n, i, j)));
      if (c != 0) terms.push_back({Monomial::variable(n, i) * Monomial::variable(n, j), c});
    }
  return Poly::from_terms(ring, std::move(terms));
}

RatMatrix quadric_matrix(const Poly& q) {
  const auto n = static_cast<Eigen::Index>(q.ring()->arity());
  RatMatrix m = RatMatrix::Zero(n, n);
  for (const auto& t : q.terms()) {
    auto [i, j] = quadric_pair(t.mono);
    const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
    if (a == b) {
      m(a, a) = t.coeff;
    } else {
      m(a, b) = t.coeff / 2;
      m(b, a) = t.coeff / 2;
    }
  }
  return m;
}

Poly quadric_from_matrix(const Ring& ring, const RatMatrix& m) {
  const auto n = static_cast<Eigen::Index>(ring->arity());
  if (m.rows() != n || m.cols() != n) throw Error("matrix size does not match the ring");
  std::vector<Term> terms;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      if (m(i, j) != m(j, i)) throw Error("matrix is not symmetric");
      Rat c = i == j ? m(i, i) : m(i, j) * 2;
      if (c != 0)
        terms.push_back({Monomial::variable(static_cast<std::size_t>(n), static_cast<std::size_t>(i)) *
                             Monomial::variable(static_cast<std::size_t>(n), static_cast<std::size_t>(j)),
                         c});
    }
  return Poly::from_terms(ring, std::move(terms));
}

QuadraticForm::QuadraticForm(Poly q) : poly_(std::move(q)), matrix_(quadric_matrix(poly_)) {}

QuadraticForm QuadraticForm::from_matrix(const Ring& ring, const RatMatrix& m) {
  return QuadraticForm(quadric_from_matrix(ring, m));
}

int quad_rank(const QuadraticForm& q) {
  if (q.poly().is_zero()) throw Error("rank of the zero quadric");
  return static_cast<int>(fraction_free_rank(q.matrix()));
}

int quad_rank(const Poly& q) { return quad_rank(QuadraticForm(q)); }

QuadricSpace::QuadricSpace(std::vector<Poly> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) throw Error("empty quadric basis");
  ring_ = basis_.front().ring();
  RatMatrix rows(static_cast<Eigen::Index>(basis_.size()),
                 static_cast<Eigen::Index>(sym2_size(ring_->arity())));
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    require_same_ring(basis_.front(), basis_[k]);
    rows.row(static_cast<Eigen::Index>(k)) = quadric_vector(basis_[k]).transpose();
  }
  solver_ = CoordinateSolver<Rat>(rows);
}

std::optional<RatVector> QuadricSpace::coords(const Poly& q) const {
  if (q.is_zero()) return RatVector(RatVector::Zero(static_cast<Eigen::Index>(dim())));
  require_same_ring(basis_.front(), q);
  return solver_.coords(quadric_vector(q));
}

std::vector<Poly> echelon_quadrics(const Ring& ring, const std::vector<Poly>& qs) {
  if (qs.empty()) return {};
  RatMatrix rows(static_cast<Eigen::Index>(qs.size()), static_cast<Eigen::Index>(sym2_size(ring->arity())));
  for (std::size_t k = 0; k < qs.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = quadric_vector(qs[k]).transpose();
  auto ech = reduced_row_echelon(rows);
  std::vector<Poly> out;
  for (Eigen::Index r = 0; r < ech.rank(); ++r) out.push_back(quadric_from_vector(ring, ech.reduced.row(r).transpose()));
  return out;
}

GenericSymMatrix::GenericSymMatrix(const Ring& var_ring, std::vector<RatMatrix> slices)
    : var_ring_(var_ring), size_(var_ring->arity()), slices_(std::move(slices)) {
  coeff_ring_ = make_ring("a", slices_.size());
  const std::size_t t = slices_.size();
  entries_.reserve(sym2_size(size_));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i; j < size_; ++j) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < t; ++k) {
        const Rat& c = slices_[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (c != 0) terms.push_back({Monomial::variable(t, k), c});
      }
      entries_.push_back(Poly::from_terms(coeff_ring_, std::move(terms)));
    }
}

const Poly& GenericSymMatrix::entry(std::size_t i, std::size_t j) const {
  return entries_[sym2_index(size_, i, j)];
}

RatMatrix GenericSymMatrix::specialize(const RatVector& a) const {
  if (static_cast<std::size_t>(a.size()) != params()) throw Error("specialization has the wrong length");
  const auto n = static_cast<Eigen::Index>(size_);
  RatMatrix m = RatMatrix::Zero(n, n);
  for (std::size_t k = 0; k < params(); ++k)
    if (a(static_cast<Eigen::Index>(k)) != 0) m += a(static_cast<Eigen::Index>(k)) * slices_[k];
  return m;
}

GenericSymMatrix generic_matrix(const std::vector<Poly>& basis) {
  if (basis.empty()) throw Error("generic matrix of an empty basis");
  std::vector<RatMatrix> slices;
  for (const auto& q : basis) {
    require_same_ring(basis.front(), q);
    if (q.is_zero()) throw Error("zero quadric in basis");
    slices.push_back(quadric_matrix(q));
  }
  return GenericSymMatrix(basis.front().ring(), std::move(slices));
}

namespace {

Poly det_rec(const GenericSymMatrix& m, const std::vector<std::size_t>& rows, std::vector<std::size_t>& cols,
             std::size_t depth) {
  if (depth == rows.size()) return Poly::constant(m.coeff_ring(), Rat(1));
  Poly acc(m.coeff_ring());
  const std::size_t r = rows[depth];
  int sign = 1;
  for (std::size_t k = depth; k < cols.size(); ++k) {
    // Move the chosen column to position depth; the sign tracks the shift.
    std::rotate(cols.begin() + static_cast<long>(depth), cols.begin() + static_cast<long>(k),
                cols.begin() + static_cast<long>(k) + 1);
    const Poly& e = m.entry(r, cols[depth]);
    if (!e.is_zero()) {
      Poly sub = det_rec(m, rows, cols, depth + 1);
      if (!sub.is_zero()) acc = sign > 0 ? acc + e * sub : acc - e * sub;
    }
    std::rotate(cols.begin() + static_cast<long>(depth), cols.begin() + static_cast<long>(depth) + 1,
                cols.begin() + static_cast<long>(k) + 1);
    sign = -sign;
  }
  return acc;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::size_t overlap(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t n = 0;
  for (auto x : a) n += static_cast<std::size_t>(std::binary_search(b.begin(), b.end(), x));
  return n;
}

Poly derivative(const Poly& g, std::size_t var, unsigned times) {
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    const unsigned e = t.mono[var];
    if (e < times) continue;
    auto exps = t.mono.exponents();
    exps[var] = static_cast<Monomial::Exp>(e - times);
    terms.push_back({Monomial(std::move(exps)), t.coeff * Rat(falling_factorial(static_cast<int>(e), static_cast<int>(times)))});
  }
  return Poly::from_terms(g.ring(), std::move(terms));
}

RatVector linear_vector(const Poly& l) {
  const std::size_t n = l.ring()->arity();
  RatVector v = RatVector::Zero(static_cast<Eigen::Index>(n));
  for (const auto& t : l.terms()) {
    if (t.mono.degree() != 1) throw Error("expected a linear form");
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono[i] == 1) v(static_cast<Eigen::Index>(i)) = t.coeff;
  }
  return v;
}

// Runs f(i) for i in [0, count) on a few threads; results land by index.
template <typename F>
void parallel_for(std::size_t count, F f, std::stop_token stop) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  if (count < 64 || workers == 1) {
    for (std::size_t i = 0; i < count && !stop.stop_requested(); ++i) f(i);
    return;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count && !stop.stop_requested(); i += workers) f(i);
    }));
  for (auto& j : jobs) j.get();
}

}  // namespace

Poly submatrix_determinant(const GenericSymMatrix& m, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size()) throw Error("submatrix must be square");
  for (auto i : rows)
    if (i >= m.size()) throw Error("row index out of range");
  for (auto j : cols)
    if (j >= m.size()) throw Error("column index out of range");
  std::vector<std::size_t> c = cols;
  return det_rec(m, rows, c, 0);
}

std::vector<Minor> minors(const GenericSymMatrix& m, int k, std::stop_token stop) {
  if (k < 1 || static_cast<std::size_t>(k) > m.size()) throw Error("minor size out of range");
  auto sets = subsets(m.size(), static_cast<std::size_t>(k));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a; b < sets.size(); ++b) pairs.emplace_back(a, b);
  std::vector<Poly> dets(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    dets[i] = submatrix_determinant(m, sets[pairs[i].first], sets[pairs[i].second]);
  }, stop);
  std::vector<Minor> out;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!dets[i].is_zero()) out.push_back({sets[pairs[i].first], sets[pairs[i].second], std::move(dets[i])});
  return out;
}

Poly reduce_mod_linear(const Poly& g, const std::vector<Poly>& linear) {
  if (linear.empty() || g.is_zero()) return g;
  const Ring& ring = g.ring();
  const std::size_t n = ring->arity();
  RatMatrix rows(static_cast<Eigen::Index>(linear.size()), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < linear.size(); ++r) {
    require_same_ring(g, linear[r]);
    rows.row(static_cast<Eigen::Index>(r)) = linear_vector(linear[r]).transpose();
  }
  auto ech = reduced_row_echelon(rows);
  std::vector<Poly> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(Poly::variable(ring, i));
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    const auto p = ech.pivots[r];
    std::vector<Term> terms;
    for (Eigen::Index c = p + 1; c < static_cast<Eigen::Index>(n); ++c) {
      const Rat& v = ech.reduced(static_cast<Eigen::Index>(r), c);
      if (v != 0) terms.push_back({Monomial::variable(n, static_cast<std::size_t>(c)), -v});
    }
    images[static_cast<std::size_t>(p)] = Poly::from_terms(ring, std::move(terms));
  }
  return substitute(g, images);
}

std::optional<PurePower> pure_power(const Poly& g) {
  if (g.is_zero() || !g.is_homogeneous()) return std::nullopt;
  const int deg = g.total_degree();
  if (deg < 1) return std::nullopt;
  const auto n = static_cast<unsigned>(deg);
  for (std::size_t v = 0; v < g.ring()->arity(); ++v) {
    Poly d = derivative(g, v, n - 1);
    if (d.is_zero()) continue;
    Poly l = d.monic();
    Poly ln = l.pow(n);
    Rat c = g.lead().coeff / ln.lead().coeff;
    if (!(g == ln * c)) return std::nullopt;
    return PurePower{c, l, n};
  }
  return std::nullopt;
}

std::vector<SieveHit> triangular_sieve(const GenericSymMatrix& m, int k, std::vector<Poly> known,
                                       const SieveOptions& opts, std::stop_token stop) {
  const std::size_t K = static_cast<std::size_t>(k) + 1;
  if (k < 1 || K > m.size()) throw Error("sieve minor size out of range");
  const std::size_t t = m.params();
  SpanBasis<Rat> span(static_cast<Eigen::Index>(t));
  for (const auto& l : known) span.insert(linear_vector(l));

  auto sets = subsets(m.size(), K);
  const std::size_t min_overlap = 2 * K > opts.max_span ? 2 * K - opts.max_span : 0;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t ov = K + 1; ov-- > min_overlap;) {
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = a; b < sets.size(); ++b)
        if (overlap(sets[a], sets[b]) == ov) order.emplace_back(a, b);
  }
  std::vector<Poly> dets(order.size());
  parallel_for(order.size(), [&](std::size_t i) {
    dets[i] = submatrix_determinant(m, sets[order[i].first], sets[order[i].second]);
  }, stop);

  std::vector<SieveHit> hits;
  bool progress = true;
  while (progress && !stop.stop_requested() && hits.size() < opts.max_forms) {
    progress = false;
    for (std::size_t i = 0; i < order.size() && !stop.stop_requested(); ++i) {
      if (dets[i].is_zero()) continue;
      Poly r = reduce_mod_linear(dets[i], known);
      if (r.is_zero()) continue;
      auto pp = pure_power(r);
      if (!pp) continue;
      if (!span.insert(linear_vector(pp->form))) continue;
      SieveHit hit;
      hit.form = pp->form;
      hit.exponent = pp->exponent;
      hit.scalar = pp->scalar;
      hit.rows = sets[order[i].first];
      hit.cols = sets[order[i].second];
      hit.det = dets[i];
      hit.known_before = known.size();
      known.push_back(pp->form);
      hits.push_back(std::move(hit));
      progress = true;
      if (hits.size() >= opts.max_forms) break;
    }
  }
  return hits;
}

bool replay_sieve_hit(const GenericSymMatrix& m, const SieveHit& hit, const std::vector<Poly>& earlier) {
  if (hit.rows.size() != hit.cols.size() || hit.rows.empty()) return false;
  for (auto i : hit.rows)
    if (i >= m.size()) return false;
  for (auto j : hit.cols)
    if (j >= m.size()) return false;
  if (hit.form.is_zero() || hit.form.total_degree() != 1 || !hit.form.is_homogeneous()) return false;
  if (hit.exponent == 0 || hit.scalar == 0) return false;
  Poly det = submatrix_determinant(m, hit.rows, hit.cols);
  if (!(det == hit.det)) return false;
  Poly diff = det - hit.form.pow(hit.exponent) * hit.scalar;
  return reduce_mod_linear(diff, earlier).is_zero();
}

}  // namespace amc
