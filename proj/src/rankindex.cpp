#include "amc/rankindex.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace amc {

RankBudget RankBudget::named(std::string_view profile) {
  RankBudget b;
  b.profile = std::string(profile);
  if (profile == "quick") {
    b.harvest.max_samples = 100;
    b.locus.attempts = 2;
    b.locus.max_pairs = 10000;
    b.rabinowitsch = false;
    b.time_limit = std::chrono::seconds(10);
  } else if (profile == "paper") {
    b.harvest.max_samples = 300;
    b.time_limit = std::chrono::seconds(60);
  } else if (profile == "exhaustive") {
    b.harvest.max_samples = 5000;
    b.harvest.height = 7;
    b.locus.attempts = 16;
    b.locus.max_pairs = 200000;
    b.sieve.max_span = 8;
    b.rabinowitsch_pairs = 200000;
    b.rabinowitsch_coeff_bits = 0;
    b.locus.max_coeff_bits = 0;
  } else {
    throw Error("unknown budget profile '" + std::string(profile) + "'");
  }
  return b;
}

RankBudget RankBudget::from_env() {
  const char* p = std::getenv("AMC_BUDGET_PROFILE");
  return named(p && *p ? p : "paper");
}

std::string to_string(QRStatus s) {
  switch (s) {
    case QRStatus::holds: return "holds";
    case QRStatus::fails: return "fails";
    case QRStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

/// Requests stop on its token once the limit has passed.
class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds limit) {
    if (limit.count() <= 0) return;
    watchdog_ = std::jthread([this, limit](std::stop_token done) {
      std::mutex m;
      std::unique_lock lock(m);
      std::condition_variable_any cv;
      cv.wait_for(lock, done, limit, [] { return false; });
      if (!done.stop_requested()) source_.request_stop();
    });
  }
  std::stop_token token() const { return source_.get_token(); }
  bool expired() const { return source_.stop_requested(); }

 private:
  std::stop_source source_;
  std::jthread watchdog_;
};

}  // namespace

std::vector<Poly> QRCertificate::generators() const {
  std::vector<Poly> g = quadrics;
  for (const auto& a : algebraic) g.insert(g.end(), a.parts.begin(), a.parts.end());
  return g;
}

namespace {

RatVector linear_coeffs(const Poly& l, std::size_t n) {
  RatVector v = RatVector::Zero(static_cast<Eigen::Index>(n));
  for (const auto& t : l.terms()) {
    if (t.mono.degree() != 1) throw Error("expected a linear form");
    std::size_t i = 0;
    while (t.mono[i] == 0) ++i;
    v(static_cast<Eigen::Index>(i)) = t.coeff;
  }
  return v;
}

bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  const auto n = static_cast<Eigen::Index>(sym2_size(a.front().ring()->arity()));
  RatMatrix m(static_cast<Eigen::Index>(a.size() + b.size()), n);
  for (std::size_t i = 0; i < a.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = quadric_vector(a[i]).transpose();
  for (std::size_t i = 0; i < b.size(); ++i)
    m.row(static_cast<Eigen::Index>(a.size() + i)) = quadric_vector(b[i]).transpose();
  const auto r = exact_rank(m);
  return r == exact_rank(RatMatrix(m.topRows(static_cast<Eigen::Index>(a.size())))) &&
         r == exact_rank(RatMatrix(m.bottomRows(static_cast<Eigen::Index>(b.size()))));
}

bool same_ring_names(const Ring& a, const Ring& b) { return a->names() == b->names(); }

// A left inverse of c (rows = generators, columns = basis coordinates).
RatMatrix left_inverse(const RatMatrix& c) {
  auto ech = reduced_row_echelon(RatMatrix(c.transpose()));
  const Eigen::Index n = c.cols();
  if (ech.rank() != n) throw Error("generators do not span I_2");
  RatMatrix sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) sub.row(i) = c.row(ech.pivots[static_cast<std::size_t>(i)]);
  auto inv = inverse_exact(sub);
  if (!inv) throw Error("generators do not span I_2");
  RatMatrix b = RatMatrix::Zero(n, c.rows());
  for (Eigen::Index i = 0; i < n; ++i) b.col(ech.pivots[static_cast<std::size_t>(i)]) = inv->col(i);
  return b;
}

std::vector<Poly> all_minors(const GenericSymMatrix& g, int k, std::stop_token stop) {
  std::vector<Poly> out;
  for (auto& m : minors(g, k + 1, stop)) out.push_back(std::move(m.det));
  return out;
}

class SpanTracker {
 public:
  SpanTracker(const Target& t) : target_(t), span_(static_cast<Eigen::Index>(t.dim())) {}
  bool insert(const Poly& q) {
    auto c = target_.space.coords(q);
    if (!c) throw Error("rank-locus point outside I_2");
    return span_.insert(*c);
  }
  std::size_t dim() const { return static_cast<std::size_t>(span_.dim()); }

 private:
  const Target& target_;
  SpanBasis<Rat> span_;
};

}  // namespace

PositiveSearch harvest_search(const Target& target, int k, const RankBudget& budget, std::stop_token stop) {
  if (k < 1) throw Error("rank bound must be positive");
  PositiveSearch out;
  out.dim = target.dim();
  if (k < 3) {
    // Rank <= 2 members only come from the basis and its binomials.
    SpanTracker span(target);
    for (const auto& q : target.scheme.basis)
      if (quad_rank(q) <= k && span.insert(q))
        out.items.push_back({q, *target.space.coords(q), quad_rank(q), "basis", std::nullopt});
    out.span = span.dim();
    return out;
  }
  Harvest h = k == 3 ? rank3_harvest(target, budget.harvest, stop) : rank4_harvest(target, budget.harvest, stop);
  out.items = std::move(h.items);
  out.samples = h.samples;
  if (k > 4 && out.items.size() < out.dim) {
    SpanTracker span(target);
    for (const auto& it : out.items) span.insert(it.quadric);
    for (const auto& q : target.scheme.basis) {
      const int r = quad_rank(q);
      if (r <= k && span.insert(q)) out.items.push_back({q, *target.space.coords(q), r, "basis", std::nullopt});
    }
  }
  out.span = out.items.size();
  return out;
}

void extend_with_locus(PositiveSearch& pos, const Target& target, int k, const RankBudget& budget,
                       const std::vector<Poly>& obstruction_forms, std::stop_token stop) {
  const std::size_t goal = pos.dim - obstruction_forms.size();
  if (pos.span >= goal || !budget.use_locus || stop.stop_requested()) return;
  const auto& basis = target.scheme.basis;
  const std::size_t n = basis.size();
  // The subspace of I_2 on which the obstruction forms vanish.
  std::vector<Poly> w;
  if (obstruction_forms.empty()) {
    w = basis;
  } else {
    RatMatrix f(static_cast<Eigen::Index>(obstruction_forms.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < obstruction_forms.size(); ++i)
      f.row(static_cast<Eigen::Index>(i)) = linear_coeffs(obstruction_forms[i], n).transpose();
    const RatMatrix ker = nullspace(f);
    for (Eigen::Index j = 0; j < ker.cols(); ++j) {
      Poly q(target.scheme.ring);
      for (std::size_t i = 0; i < n; ++i)
        if (ker(static_cast<Eigen::Index>(i), j) != 0) q += ker(static_cast<Eigen::Index>(i), j) * basis[i];
      w.push_back(std::move(q));
    }
  }
  SpanTracker span(target);
  for (const auto& it : pos.items) span.insert(it.quadric);
  for (const auto& a : pos.algebraic)
    for (const auto& p : a.parts) span.insert(p);
  CounterRng rng(budget.harvest.seed, 0x10c05);
  LocusOptions one = budget.locus;
  one.attempts = 1;
  for (int a = 0; a < budget.locus.attempts && span.dim() < goal && !stop.stop_requested(); ++a) {
    one.first_chart = budget.locus.first_chart + a;
    for (auto& fam : sample_rank_locus(w, k, rng, one, stop)) {
      bool grew = false;
      for (const auto& p : fam.parts) grew = span.insert(p) || grew;
      if (grew) pos.algebraic.push_back(std::move(fam));
    }
  }
  pos.span = span.dim();
}

PositiveSearch positive_search(const Target& target, int k, const RankBudget& budget, std::stop_token stop) {
  PositiveSearch pos = harvest_search(target, k, budget, stop);
  extend_with_locus(pos, target, k, budget, {}, stop);
  return pos;
}

NegativeSearch negative_search(const Target& target, int k, const RankBudget& budget, std::stop_token stop) {
  NegativeSearch out;
  const auto g = generic_matrix(target.scheme.basis);
  if (static_cast<std::size_t>(k) + 1 > g.size()) return out;
  for (auto& hit : triangular_sieve(g, k, {}, budget.sieve, stop)) {
    out.forms.push_back(hit.form);
    out.witnesses.push_back({ObstructionWitness::Kind::minor, std::move(hit), 0});
  }
  if (stop.stop_requested()) {
    out.complete = false;
    return out;
  }
  if (out.forms.empty() && budget.rabinowitsch) extend_with_rabinowitsch(out, target, k, budget, stop);
  return out;
}

void extend_with_rabinowitsch(NegativeSearch& neg, const Target& target, int k, const RankBudget& budget,
                              std::stop_token stop, const std::vector<Poly>& candidates) {
  const auto g = generic_matrix(target.scheme.basis);
  if (static_cast<std::size_t>(k) + 1 > g.size()) return;
  const Ring& A = g.coeff_ring();
  const std::size_t t = A->arity();
  std::vector<Poly> cands;
  for (const auto& c : candidates) cands.push_back(change_ring(c, A));
  if (candidates.empty()) {
    for (std::size_t i = 0; i < t; ++i) cands.push_back(Poly::variable(A, i));
    for (const auto& f : neg.forms) cands.push_back(f);
    for (std::size_t i = 0; i < neg.forms.size(); ++i)
      for (std::size_t j = i + 1; j < neg.forms.size(); ++j) {
        cands.push_back(neg.forms[i] + neg.forms[j]);
        cands.push_back(neg.forms[i] - neg.forms[j]);
      }
  }
  if (cands.size() > budget.max_candidates) cands.resize(budget.max_candidates);

  const auto mins = all_minors(g, k, stop);
  SpanBasis<Rat> span(static_cast<Eigen::Index>(t));
  for (const auto& f : neg.forms) span.insert(linear_coeffs(f, t));
  GroebnerLimits lim;
  lim.max_pairs = budget.rabinowitsch_pairs;
  lim.max_coeff_bits = budget.rabinowitsch_coeff_bits;
  for (const auto& c : cands) {
    if (stop.stop_requested()) {
      neg.complete = false;
      return;
    }
    if (span.contains(linear_coeffs(c, t))) continue;
    std::vector<Poly> ideal = mins;
    ideal.insert(ideal.end(), neg.forms.begin(), neg.forms.end());
    auto r = radical_membership(c, ideal, lim, stop);
    if (r.result == Tri::unknown) {
      neg.complete = false;
      continue;
    }
    if (r.result == Tri::yes) {
      span.insert(linear_coeffs(c, t));
      ObstructionWitness w;
      w.kind = ObstructionWitness::Kind::rabinowitsch;
      w.hit.form = c.monic();
      w.hit.known_before = neg.forms.size();
      w.gb_pairs = r.pairs;
      neg.forms.push_back(c.monic());
      neg.witnesses.push_back(std::move(w));
    }
  }
}

std::vector<Poly> annihilator_forms(const Target& target, const PositiveSearch& pos) {
  const auto n = static_cast<Eigen::Index>(target.dim());
  std::vector<RatVector> rows;
  for (const auto& it : pos.items) rows.push_back(it.coord);
  for (const auto& a : pos.algebraic)
    for (const auto& p : a.parts) rows.push_back(target.space.coords(p).value());
  RatMatrix m(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  const RatMatrix ker = rows.empty() ? RatMatrix(RatMatrix::Identity(n, n)) : nullspace(m);
  const auto ech = reduced_row_echelon(RatMatrix(ker.transpose()));
  const Ring A = generic_matrix(target.scheme.basis).coeff_ring();
  std::vector<Poly> out;
  for (Eigen::Index r = 0; r < ech.rank(); ++r) {
    Poly f(A);
    for (Eigen::Index i = 0; i < n; ++i)
      if (ech.reduced(r, i) != 0) f += ech.reduced(r, i) * Poly::variable(A, static_cast<std::size_t>(i));
    out.push_back(f.monic());
  }
  return out;
}

DeltaBounds delta(const Target& target, int t, const RankBudget& budget) {
  if (t < 1) throw Error("rank bound must be positive");
  DeltaBounds out;
  out.t = t;
  out.dim = target.dim();
  const Deadline deadline(budget.time_limit);
  const auto stop = deadline.token();
  out.positive = harvest_search(target, t, budget, stop);
  if (!out.positive.full()) {
    out.negative = negative_search(target, t, budget, stop);
    extend_with_locus(out.positive, target, t, budget, out.negative.forms, stop);
    auto open = [&] { return out.positive.span + out.negative.forms.size() < out.dim; };
    if (budget.rabinowitsch && open())
      extend_with_rabinowitsch(out.negative, target, t, budget, stop, annihilator_forms(target, out.positive));
    if (budget.rabinowitsch && open() && !out.negative.forms.empty())
      extend_with_rabinowitsch(out.negative, target, t, budget, stop);
  }
  out.capped = deadline.expired() || !out.negative.complete;
  out.lower = out.positive.span;
  out.upper = out.dim - out.negative.forms.size();
  if (out.lower > out.upper) throw ConsistencyError("rank-locus span exceeds the obstruction bound");
  return out;
}

namespace {

QRCertificate make_positive(const Target& target, int k, const PositiveSearch& pos) {
  QRCertificate c;
  c.k = k;
  c.scheme = target.scheme.spec.label();
  c.i2_basis = target.scheme.basis;
  for (const auto& it : pos.items) {
    c.quadrics.push_back(it.quadric);
    c.ranks.push_back(it.rank);
    c.sources.push_back(it.source);
  }
  c.algebraic = pos.algebraic;
  const auto gens = c.generators();
  RatMatrix coords(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(target.dim()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    coords.row(static_cast<Eigen::Index>(i)) = target.space.coords(gens[i]).value().transpose();
  c.basis_matrix = left_inverse(coords);
  return c;
}

ObstructionCertificate make_negative(const Target& target, int k, const NegativeSearch& neg) {
  ObstructionCertificate c;
  c.k = k;
  c.scheme = target.scheme.spec.label();
  c.i2_basis = target.scheme.basis;
  c.forms = neg.forms;
  c.witnesses = neg.witnesses;
  return c;
}

}  // namespace

QRDecision certify_qr(const Target& target, int k, const RankBudget& budget) {
  QRDecision out;
  out.k = k;
  out.dim = target.dim();
  std::optional<PositiveSearch> pos;
  std::optional<NegativeSearch> neg;
  std::exception_ptr pos_err, neg_err;
  const Deadline deadline(budget.time_limit);
  {
    std::stop_source pos_stop, neg_stop;
    std::stop_callback on_deadline(deadline.token(), [&] {
      pos_stop.request_stop();
      neg_stop.request_stop();
    });
    std::jthread tp([&] {
      try {
        pos = positive_search(target, k, budget, pos_stop.get_token());
        if (pos->full()) neg_stop.request_stop();
      } catch (...) {
        pos_err = std::current_exception();
      }
    });
    std::jthread tn([&] {
      try {
        neg = negative_search(target, k, budget, neg_stop.get_token());
        if (!neg->forms.empty()) pos_stop.request_stop();
      } catch (...) {
        neg_err = std::current_exception();
      }
    });
  }
  if (pos_err) std::rethrow_exception(pos_err);
  if (neg_err) std::rethrow_exception(neg_err);
  // Neither side decided: test what vanishes on the points found.
  if (pos && neg && !pos->full() && neg->forms.empty() && budget.rabinowitsch && !deadline.expired())
    extend_with_rabinowitsch(*neg, target, k, budget, deadline.token(), annihilator_forms(target, *pos));
  const bool holds = pos && pos->full();
  const bool fails = neg && !neg->forms.empty();
  if (holds && fails) throw ConsistencyError("both a spanning set and an obstruction form were found at k = " +
                                             std::to_string(k));
  out.capped = deadline.expired() || (neg && !neg->complete);
  out.partial_span = pos ? pos->span : 0;
  out.partial_forms = neg ? neg->forms.size() : 0;
  if (holds) {
    out.status = QRStatus::holds;
    out.positive = make_positive(target, k, *pos);
    out.partial_forms = 0;
  } else if (fails) {
    out.status = QRStatus::fails;
    out.negative = make_negative(target, k, *neg);
    out.partial_span = 0;
  }
  return out;
}

RankIndex rank_index(const Target& target, const RankBudget& budget) {
  RankIndex out;
  const int n = static_cast<int>(target.scheme.ring->arity());
  std::optional<int> failed;
  for (int k = 3; k <= std::max(n, 3); ++k) {
    auto dec = certify_qr(target, k, budget);
    const auto st = dec.status;
    out.levels.push_back(std::move(dec));
    if (st == QRStatus::fails) failed = k;
    if (st == QRStatus::holds) {
      out.upper = k;
      break;
    }
  }
  out.lower = failed ? *failed + 1 : 3;
  return out;
}

// ---------------------------------------------------------------- verification

bool verify(const QRCertificate& c, const Scheme* scheme) {
  try {
    if (c.i2_basis.empty() || c.k < 1) return false;
    const Ring& R = c.i2_basis.front().ring();
    if (scheme && (!same_ring_names(scheme->ring, R) || !same_span(scheme->basis, c.i2_basis))) return false;
    QuadricSpace space(c.i2_basis);
    if (c.sources.size() != c.quadrics.size() || c.ranks.size() != c.quadrics.size()) return false;
    for (std::size_t i = 0; i < c.quadrics.size(); ++i) {
      const Poly& q = c.quadrics[i];
      if (!same_ring_names(q.ring(), R) || c.ranks[i] > c.k || quad_rank(q) != c.ranks[i]) return false;
    }
    for (const auto& a : c.algebraic)
      if (!verify_algebraic_rank(a, c.k)) return false;
    const auto gens = c.generators();
    RatMatrix coords(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto v = space.coords(gens[i]);
      if (!v) return false;
      coords.row(static_cast<Eigen::Index>(i)) = v->transpose();
    }
    if (c.basis_matrix.rows() != static_cast<Eigen::Index>(space.dim()) ||
        c.basis_matrix.cols() != static_cast<Eigen::Index>(gens.size()))
      return false;
    for (std::size_t i = 0; i < c.quadrics.size(); ++i)
      if (c.basis_matrix.col(static_cast<Eigen::Index>(i)).isZero()) return false;
    RatMatrix prod = c.basis_matrix * coords;
    return prod == RatMatrix::Identity(prod.rows(), prod.cols());
  } catch (const Error&) {
    return false;
  }
}

bool verify(const ObstructionCertificate& c, const Scheme* scheme) {
  try {
    if (c.i2_basis.empty() || c.k < 1 || c.forms.empty() || c.forms.size() != c.witnesses.size()) return false;
    if (scheme && (!same_ring_names(scheme->ring, c.i2_basis.front().ring()) || !same_span(scheme->basis, c.i2_basis)))
      return false;
    const auto g = generic_matrix(c.i2_basis);
    const std::size_t t = g.params();
    SpanBasis<Rat> span(static_cast<Eigen::Index>(t));
    std::vector<Poly> mins;
    for (std::size_t i = 0; i < c.forms.size(); ++i) {
      const Poly& f = c.forms[i];
      if (!same_ring_names(f.ring(), g.coeff_ring())) return false;
      if (f.is_zero() || f.total_degree() != 1 || !f.is_homogeneous() || f.lead().coeff != 1) return false;
      if (!span.insert(linear_coeffs(f, t))) return false;
      const auto& w = c.witnesses[i];
      if (!(w.hit.form == f) || w.hit.known_before > i) return false;
      const std::vector<Poly> earlier(c.forms.begin(), c.forms.begin() + static_cast<std::ptrdiff_t>(w.hit.known_before));
      if (w.kind == ObstructionWitness::Kind::minor) {
        if (w.hit.rows.size() != static_cast<std::size_t>(c.k) + 1) return false;
        if (!replay_sieve_hit(g, w.hit, earlier)) return false;
      } else {
        if (mins.empty()) mins = all_minors(g, c.k, {});
        std::vector<Poly> ideal = mins;
        ideal.insert(ideal.end(), earlier.begin(), earlier.end());
        const auto r = radical_membership(f, ideal);
        if (r.result != Tri::yes || r.pairs != w.gb_pairs) return false;
      }
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------- scans

namespace {

BinaryForm random_binary_form(CounterRng& rng, int degree) {
  RatVector c(degree + 1);
  for (int i = 0; i <= degree; ++i) c(i) = Rat(rng.uniform(-4, 4));
  return BinaryForm(c);
}

}  // namespace

ScanReport conjecture_scan(std::string_view conjecture, int d_min, int d_max, int samples, std::uint64_t seed,
                           const RankBudget& budget) {
  if (conjecture != "1.2" && conjecture != "1.4") throw Error("conjecture must be 1.2 or 1.4");
  if (d_min < 5 || d_max < d_min || samples < 1) throw Error("scan needs 5 <= d_min <= d_max and samples >= 1");
  ScanReport out;
  out.conjecture = std::string(conjecture);
  CounterRng rng(seed, 0x5ca9);
  for (int d = d_min; d <= d_max; ++d) {
    int made = 0;
    for (int tries = 0; made < samples && tries < 50 * samples; ++tries) {
      SchemeSpec spec;
      spec.d = d;
      std::string stratum;
      int rank = 0;
      try {
        if (conjecture == "1.4") {
          const auto type = static_cast<MultiplicityType>(made % 3);
          // Normal forms under PGL_2: triple at T, double at T and simple at S,
          // simple points at T, S and S - T.
          const BinaryForm S = parse_binary_form("S"), T = parse_binary_form("T");
          const BinaryForm g1 = type == MultiplicityType::triple          ? T * T * T
                                : type == MultiplicityType::double_simple ? T * T * S
                                                                          : S * T * parse_binary_form("S - T");
          auto pair = make_apolar_pair(g1, random_binary_form(rng, d - 1), d);
          if (pair.d1() != 3 || multiplicity_type(pair) != type) continue;
          spec.kind = SchemeKind::union_trisecant;
          spec.apolar = pair;
          stratum = to_string(type);
          rank = 3;
        } else {
          RatVector p(d + 1);
          for (int i = 0; i <= d; ++i) p(i) = Rat(rng.uniform(-3, 3));
          if (p.isZero()) continue;
          ProjPoint center(p);
          rank = rnc_rank(center);
          if (rank < 4) continue;
          spec.kind = SchemeKind::projected_curve;
          spec.center = center;
          stratum = "rank " + std::to_string(rank);
        }
        Target target(build_scheme(spec));
        ScanEntry e;
        e.scheme = target.scheme.spec.label();
        e.stratum = stratum;
        e.rnc_rank = rank;
        e.decision = certify_qr(target, 3, budget);
        out.entries.push_back(std::move(e));
        ++made;
      } catch (const ConsistencyError&) {
        throw;
      } catch (const Error&) {
        continue;
      }
    }
  }
  return out;
}

}  // namespace amc
