#include "amc/groebner.hpp"

#include <algorithm>

namespace amc {

std::string to_string(GbStatus s) {
  switch (s) {
    case GbStatus::complete: return "complete";
    case GbStatus::truncated: return "truncated";
    case GbStatus::cap_exceeded: return "cap-exceeded";
    case GbStatus::cancelled: return "cancelled";
  }
  return "?";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

bool GroebnerBasis::exact_through(unsigned deg) const {
  if (status == GbStatus::complete) return true;
  return status == GbStatus::truncated && homogeneous && deg <= max_degree_seen;
}

bool GroebnerBasis::is_unit() const {
  return std::any_of(gens.begin(), gens.end(), [](const Poly& g) { return g.total_degree() == 0; });
}

namespace {

std::size_t coeff_bits(const Poly& p) {
  std::size_t bits = 0;
  for (const auto& t : p.terms()) {
    const Int n = abs(numerator_of(t.coeff)), d = denominator_of(t.coeff);
    if (n != 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(n) + 1);
    bits = std::max<std::size_t>(bits, boost::multiprecision::msb(d) + 1);
  }
  return bits;
}

const Poly* find_reducer(const Monomial& m, const std::vector<const Poly*>& G) {
  for (const Poly* g : G)
    if (g->lead().mono.divides(m)) return g;
  return nullptr;
}

Poly reduce(const Poly& f, const std::vector<const Poly*>& G) {
  if (f.is_zero()) return f;
  std::vector<Term> rem;
  Poly work = f;
  while (!work.is_zero()) {
    const Term& lt = work.lead();
    if (const Poly* g = find_reducer(lt.mono, G)) {
      work = work.sub_scaled(lt.coeff / g->lead().coeff, lt.mono / g->lead().mono, *g);
    } else {
      rem.push_back(lt);
      work = work.tail();
    }
  }
  return Poly::from_terms(f.ring(), std::move(rem));
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

bool homogeneous_all(const std::vector<Poly>& gens) {
  return std::all_of(gens.begin(), gens.end(), [](const Poly& p) { return p.is_homogeneous(); });
}

}  // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& G) {
  std::vector<const Poly*> ptrs;
  for (const auto& g : G) {
    require_same_ring(f, g);
    if (!g.is_zero()) ptrs.push_back(&g);
  }
  return reduce(f, ptrs);
}

GroebnerBasis buchberger(const std::vector<Poly>& input, const GroebnerLimits& limits, std::stop_token stop) {
  GroebnerBasis out;
  if (input.empty()) throw Error("Gröbner basis of an empty generator list");
  out.ring = input.front().ring();
  for (const auto& p : input) require_same_ring(input.front(), p);
  out.homogeneous = homogeneous_all(input);
  const RingCtx& ctx = *out.ring;

  std::vector<Poly> polys;
  std::vector<unsigned> sugar;
  std::vector<bool> active;
  std::vector<Pair> pairs;

  auto cmp_mono = [&](const Monomial& a, const Monomial& b) { return ctx.compare(a, b); };

  // Gebauer-Moeller update with new element h (index k).
  auto update = [&](std::size_t k) {
    const Monomial& lh = polys[k].lead().mono;
    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      const Monomial& lg = polys[i].lead().mono;
      Monomial l = lg.lcm(lh);
      const unsigned s = std::max(sugar[i] + (l.degree() - lg.degree()), sugar[k] + (l.degree() - lh.degree()));
      fresh.push_back({i, k, std::move(l), s});
    }
    // Chain criterion among the new pairs; coprime pairs are kept for now.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      bool coprime = polys[p.i].lead().mono.coprime(lh);
      bool drop = false;
      if (!coprime) {
        for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
          if (a == b) continue;
          const auto& q = fresh[b];
          if (q.lcm.divides(p.lcm) && (!(q.lcm == p.lcm) || b < a)) drop = true;
        }
      } else {
        for (std::size_t b = 0; b < fresh.size() && !drop; ++b)
          if (b != a && fresh[b].lcm == p.lcm && b < a) drop = true;
      }
      if (!drop) kept.push_back(p);
    }
    // Product criterion.
    std::vector<Pair> e;
    for (auto& p : kept)
      if (!polys[p.i].lead().mono.coprime(lh)) e.push_back(std::move(p));
    // Old pairs made redundant by h.
    std::vector<Pair> old;
    for (auto& p : pairs) {
      const bool redundant = lh.divides(p.lcm) && !(polys[p.i].lead().mono.lcm(lh) == p.lcm) &&
                             !(polys[p.j].lead().mono.lcm(lh) == p.lcm);
      if (!redundant) old.push_back(std::move(p));
    }
    pairs = std::move(old);
    for (auto& p : e) pairs.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i)
      if (active[i] && lh.divides(polys[i].lead().mono)) active[i] = false;
  };

  auto active_ptrs = [&]() {
    std::vector<const Poly*> v;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) v.push_back(&polys[i]);
    return v;
  };

  auto add = [&](Poly h, unsigned s) {
    h = h.monic();
    polys.push_back(std::move(h));
    sugar.push_back(s);
    active.push_back(true);
    out.max_degree_seen = std::max(out.max_degree_seen, static_cast<unsigned>(polys.back().total_degree()));
    update(polys.size() - 1);
  };

  // Seed with the input, reduced one after another.
  std::vector<Poly> seeds;
  for (const auto& p : input)
    if (!p.is_zero()) seeds.push_back(p);
  std::sort(seeds.begin(), seeds.end(), [&](const Poly& a, const Poly& b) {
    return cmp_mono(a.lead().mono, b.lead().mono) < 0;
  });
  for (const auto& p : seeds) {
    Poly r = reduce(p, active_ptrs());
    if (!r.is_zero()) add(std::move(r), static_cast<unsigned>(p.total_degree()));
  }

  bool truncated = false;
  while (!pairs.empty()) {
    if (stop.stop_requested()) {
      out.status = GbStatus::cancelled;
      break;
    }
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (int c = cmp_mono(a.lcm, b.lcm)) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair p = *best;
    pairs.erase(best);
    if (limits.truncate_degree && p.lcm.degree() > *limits.truncate_degree) {
      truncated = true;
      continue;
    }
    if (p.sugar > limits.max_degree || out.pairs_processed >= limits.max_pairs) {
      out.status = GbStatus::cap_exceeded;
      break;
    }
    ++out.pairs_processed;
    const Poly& f = polys[p.i];
    const Poly& g = polys[p.j];
    Poly s = f.mul_monomial(p.lcm / f.lead().mono, Rat(1) / f.lead().coeff)
                 .sub_scaled(Rat(1) / g.lead().coeff, p.lcm / g.lead().mono, g);
    Poly r = reduce(s, active_ptrs());
    if (r.is_zero()) {
      ++out.pairs_reduced_to_zero;
      continue;
    }
    add(std::move(r), p.sugar);
    if (limits.max_coeff_bits && coeff_bits(polys.back()) > limits.max_coeff_bits) {
      out.status = GbStatus::cap_exceeded;
      break;
    }
  }
  if (out.status == GbStatus::cap_exceeded || out.status == GbStatus::cancelled) {
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) out.gens.push_back(polys[i]);
    return out;
  }
  if (out.status == GbStatus::complete && truncated) out.status = GbStatus::truncated;
  if (out.status == GbStatus::truncated && limits.truncate_degree)
    out.max_degree_seen = *limits.truncate_degree;

  // Minimalize and interreduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (!active[i]) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < polys.size() && !redundant; ++j)
      if (j != i && active[j] && polys[j].lead().mono.divides(polys[i].lead().mono) &&
          (!(polys[j].lead().mono == polys[i].lead().mono) || j < i))
        redundant = true;
    if (!redundant) minimal.push_back(polys[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
    return cmp_mono(a.lead().mono, b.lead().mono) < 0;
  });
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Poly*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    Poly lead = Poly::monomial(out.ring, minimal[i].lead().mono, minimal[i].lead().coeff);
    minimal[i] = (lead + reduce(minimal[i].tail(), others)).monic();
  }
  out.gens = std::move(minimal);
  if (out.status == GbStatus::truncated && !out.homogeneous) out.max_degree_seen = 0;
  return out;
}

Tri ideal_membership(const Poly& f, const GroebnerBasis& G) {
  if (f.is_zero()) return Tri::yes;
  const bool zero = normal_form(f, G).is_zero();
  if (zero) return Tri::yes;
  if (G.exact_through(static_cast<unsigned>(f.total_degree())) && (G.complete() || f.is_homogeneous()))
    return Tri::no;
  return Tri::unknown;
}

RadicalCheck radical_membership(const Poly& l, const std::vector<Poly>& ideal, const GroebnerLimits& limits,
                                std::stop_token stop) {
  if (l.is_zero()) throw Error("radical membership of the zero polynomial");
  auto names = l.ring()->names();
  std::string w = "_w";
  while (l.ring()->index_of(w)) w += "_";
  names.push_back(w);
  Ring ext = make_ring(names, MonomialOrder::degrevlex());
  std::vector<Poly> gens;
  for (const auto& g : ideal) gens.push_back(change_ring(g, ext));
  gens.push_back(Poly::constant(ext, Rat(1)) - Poly::variable(ext, w) * change_ring(l, ext));
  GroebnerLimits lim = limits;
  lim.truncate_degree.reset();
  auto gb = buchberger(gens, lim, stop);
  RadicalCheck out;
  out.status = gb.status;
  out.pairs = gb.pairs_processed;
  if (gb.is_unit()) out.result = Tri::yes;
  else if (gb.complete()) out.result = Tri::no;
  return out;
}

PowerCheck power_membership(const Poly& l, const std::vector<Poly>& ideal, unsigned nmax,
                            const GroebnerLimits& limits, std::stop_token stop) {
  if (l.is_zero()) throw Error("power membership of the zero polynomial");
  if (nmax < 1) throw Error("power membership needs nmax >= 1");
  PowerCheck out;
  GroebnerLimits lim = limits;
  const bool homogeneous = l.is_homogeneous() && homogeneous_all(ideal);
  if (homogeneous) lim.truncate_degree = nmax * static_cast<unsigned>(l.total_degree());
  std::vector<Poly> gens;
  for (const auto& g : ideal)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) {
    out.result = Tri::no;
    return out;
  }
  auto gb = buchberger(gens, lim, stop);
  bool undecided = false;
  Poly power = Poly::constant(l.ring(), Rat(1));
  for (unsigned n = 1; n <= nmax; ++n) {
    power = power * l;
    Tri t = ideal_membership(power, gb);
    if (t == Tri::yes) {
      out.exponent = n;
      out.result = Tri::yes;
      return out;
    }
    if (t == Tri::unknown) undecided = true;
  }
  out.result = undecided ? Tri::unknown : Tri::no;
  return out;
}

std::vector<Poly> eliminated_part(const GroebnerBasis& G, std::size_t block) {
  std::vector<Poly> out;
  for (const auto& g : G.gens) {
    auto sup = g.support();
    if (std::all_of(sup.begin(), sup.end(), [&](std::size_t i) { return i >= block; })) out.push_back(g);
  }
  return out;
}

}  // namespace amc
