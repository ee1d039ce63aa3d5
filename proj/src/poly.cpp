#include "amc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace amc {

std::string to_string(const MonomialOrder& o) {
  switch (o.kind) {
    case OrderKind::degrevlex: return "degrevlex";
    case OrderKind::lex: return "lex";
    case OrderKind::elimination: return "elim:" + std::to_string(o.block);
  }
  return "?";
}

MonomialOrder parse_order(std::string_view text) {
  if (text == "degrevlex" || text == "grevlex") return MonomialOrder::degrevlex();
  if (text == "lex") return MonomialOrder::lex();
  if (text.starts_with("elim:")) {
    auto rest = std::string(text.substr(5));
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error("bad elimination order '" + std::string(text) + "'");
    return MonomialOrder::elimination(std::stoul(rest));
  }
  throw Error("unknown monomial order '" + std::string(text) + "'");
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Exp> exps) : e_(std::move(exps)) {
  for (auto x : e_) deg_ += x;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<Exp>(r.e_[i] + o.e_[i]);
  r.deg_ = deg_ + o.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<Exp>(r.e_[i] - o.e_[i]);
  r.deg_ = deg_ - o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  r.deg_ = 0;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] && o.e_[i]) return false;
  return true;
}

Monomial Monomial::variable(std::size_t arity, std::size_t i, Exp power) {
  std::vector<Exp> e(arity, 0);
  e[i] = power;
  return Monomial(std::move(e));
}

// ---------------------------------------------------------------- RingCtx

RingCtx::RingCtx(std::vector<std::string> names, MonomialOrder order)
    : names_(std::move(names)), order_(order) {
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("duplicate variable names");
  if (order_.kind == OrderKind::elimination && order_.block >= names_.size())
    throw Error("elimination block must be smaller than the number of variables");
}

std::optional<std::size_t> RingCtx::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

namespace {

int revlex_tail(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

unsigned partial_degree(const Monomial& m, std::size_t lo, std::size_t hi) {
  unsigned s = 0;
  for (std::size_t i = lo; i < hi; ++i) s += m[i];
  return s;
}

}  // namespace

int RingCtx::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = names_.size();
  switch (order_.kind) {
    case OrderKind::degrevlex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      return revlex_tail(a, b, 0, n);
    case OrderKind::lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case OrderKind::elimination: {
      const std::size_t k = order_.block;
      const unsigned da = partial_degree(a, 0, k), db = partial_degree(b, 0, k);
      if (da != db) return da < db ? -1 : 1;
      if (int c = revlex_tail(a, b, 0, k)) return c;
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      return revlex_tail(a, b, k, n);
    }
  }
  return 0;
}

Ring make_ring(std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<const RingCtx>(std::move(names), order);
}

Ring make_ring(std::string_view prefix, std::size_t n, MonomialOrder order) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return make_ring(std::move(names), order);
}

Ring with_order(const Ring& ring, MonomialOrder order) { return make_ring(ring->names(), order); }

void require_same_ring(const Poly& p, const Poly& q) {
  if (!p.ring() || !q.ring() || !p.ring()->same_as(*q.ring())) throw Error("polynomials live in different rings");
}

// ---------------------------------------------------------------- Poly

Poly Poly::from_terms(Ring ring, std::vector<Term> terms) {
  const RingCtx& ctx = *ring;
  for (const auto& t : terms)
    if (t.mono.arity() != ctx.arity()) throw Error("monomial arity does not match ring");
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ctx.compare(a.mono, b.mono) > 0; });
  Poly p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Poly Poly::constant(Ring ring, const Rat& c) {
  const auto n = ring->arity();
  return monomial(std::move(ring), Monomial(n), c);
}

Poly Poly::variable(Ring ring, std::size_t i) {
  if (i >= ring->arity()) throw Error("variable index out of range");
  const auto n = ring->arity();
  return monomial(std::move(ring), Monomial::variable(n, i));
}

Poly Poly::variable(Ring ring, std::string_view name) {
  auto i = ring->index_of(name);
  if (!i) throw Error("unknown variable '" + std::string(name) + "'");
  return variable(std::move(ring), *i);
}

Poly Poly::monomial(Ring ring, Monomial m, const Rat& c) {
  if (m.arity() != ring->arity()) throw Error("monomial arity does not match ring");
  Poly p(std::move(ring));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Poly Poly::tail() const {
  Poly r(ring_);
  if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
  return d;
}

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Rat Poly::coeff(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return Rat(0);
}

Rat Poly::eval(std::span<const Rat> point) const {
  if (point.size() != ring_->arity()) throw Error("evaluation point has wrong length");
  Rat sum = 0;
  for (const auto& t : terms_) {
    Rat v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (unsigned e = 0; e < t.mono[i]; ++e) v *= point[i];
    sum += v;
  }
  return sum;
}

std::vector<std::size_t> Poly::support() const {
  std::vector<std::size_t> out;
  if (!ring_) return out;
  for (std::size_t i = 0; i < ring_->arity(); ++i)
    for (const auto& t : terms_)
      if (t.mono[i]) {
        out.push_back(i);
        break;
      }
  return out;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& o) { return *this = add(*this, o); }
Poly& Poly::operator-=(const Poly& o) { return *this = sub(*this, o); }
Poly& Poly::operator*=(const Rat& c) { return *this = scale(*this, c); }

Poly Poly::sub_scaled(const Rat& c, const Monomial& m, const Poly& g) const {
  require_same_ring(*this, g);
  const RingCtx& ctx = *ring_;
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      r.terms_.push_back(terms_[i++]);
      continue;
    }
    Monomial gm = g.terms_[j].mono * m;
    const int cmp = i == terms_.size() ? -1 : ctx.compare(terms_[i].mono, gm);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({std::move(gm), -c * g.terms_[j++].coeff});
    } else {
      Rat v = terms_[i++].coeff - c * g.terms_[j++].coeff;
      if (v != 0) r.terms_.push_back({std::move(gm), std::move(v)});
    }
  }
  return r;
}

Poly Poly::mul_monomial(const Monomial& m, const Rat& c) const {
  Poly r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(*this, Rat(1) / lead().coeff);
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(ring_, Rat(1));
  Poly base = *this;
  while (n) {
    if (n & 1u) result = mul(result, base);
    n >>= 1u;
    if (n) base = mul(base, base);
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (is_zero() && o.is_zero()) return true;
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.mono.degree() == 0) {
      os << amc::to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.arity(); ++i) {
      if (!t.mono[i]) continue;
      if (wrote) os << "*";
      os << ring_->name(i);
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

Poly add(const Poly& p, const Poly& q) {
  if (q.is_zero() && p.ring()) return p;
  if (p.is_zero() && q.ring() && !p.ring()) return q;
  return p.sub_scaled(Rat(-1), Monomial(p.ring()->arity()), q);
}

Poly sub(const Poly& p, const Poly& q) {
  if (!p.ring() && q.ring()) return -q;
  if (q.is_zero() && p.ring()) return p;
  return p.sub_scaled(Rat(1), Monomial(p.ring()->arity()), q);
}

Poly mul(const Poly& p, const Poly& q) {
  require_same_ring(p, q);
  std::vector<Term> terms;
  terms.reserve(p.size() * q.size());
  for (const auto& a : p.terms())
    for (const auto& b : q.terms()) terms.push_back({a.mono * b.mono, a.coeff * b.coeff});
  return Poly::from_terms(p.ring(), std::move(terms));
}

Poly scale(const Poly& p, const Rat& c) {
  if (c == 0) return Poly(p.ring());
  return p.mul_monomial(Monomial(p.ring()->arity()), c);
}

Poly substitute(const Poly& p, const std::vector<Poly>& images) {
  if (images.size() != p.ring()->arity()) throw Error("substitution list has wrong length");
  Ring target;
  for (const auto& im : images) {
    if (!im.ring()) throw Error("substitution image without ring");
    if (!target) target = im.ring();
    else if (!target->same_as(*im.ring())) throw Error("substitution images live in different rings");
  }
  if (!target) throw Error("empty substitution into a ring without variables");
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Poly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(Poly::constant(target, Rat(1)));
    while (v.size() <= e) v.push_back(mul(v.back(), images[i]));
    return v[e];
  };
  Poly out(target);
  for (const auto& t : p.terms()) {
    Poly prod = Poly::constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.mono[i]) prod = mul(prod, power(i, t.mono[i]));
    out = add(out, prod);
  }
  return out;
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& assignment) {
  if (assignment.empty()) return p;
  Ring target;
  for (const auto& [name, im] : assignment) {
    if (!p.ring()->index_of(name)) throw Error("substitution for unknown variable '" + name + "'");
    if (!target) target = im.ring();
    else if (!target->same_as(*im.ring())) throw Error("substitution images live in different rings");
  }
  std::vector<Poly> images;
  for (std::size_t i = 0; i < p.ring()->arity(); ++i) {
    const auto& name = p.ring()->name(i);
    auto it = assignment.find(name);
    if (it != assignment.end()) images.push_back(it->second);
    else images.push_back(Poly::variable(target, name));
  }
  return substitute(p, images);
}

Poly change_ring(const Poly& p, const Ring& target) {
  std::vector<std::size_t> map(p.ring()->arity());
  for (std::size_t i = 0; i < map.size(); ++i) {
    auto j = target->index_of(p.ring()->name(i));
    if (!j) {
      bool used = std::any_of(p.terms().begin(), p.terms().end(), [&](const Term& t) { return t.mono[i] != 0; });
      if (used) throw Error("variable '" + p.ring()->name(i) + "' missing from target ring");
      map[i] = target->arity();
    } else {
      map[i] = *j;
    }
  }
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Exp> e(target->arity(), 0);
    for (std::size_t i = 0; i < map.size(); ++i)
      if (t.mono[i]) e[map[i]] = t.mono[i];
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Poly::from_terms(target, std::move(terms));
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view s, const Ring& ring) : s_(s), ring_(ring) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  std::string_view s_;
  const Ring& ring_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("cannot parse polynomial '" + std::string(s_) + "': " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip();
    Poly acc(ring_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Poly t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) acc = add(acc, term());
      else if (accept('-')) acc = sub(acc, term());
      else return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = mul(acc, factor());
      } else if (accept('/')) {
        Poly d = factor();
        if (d.total_degree() != 0) fail("division by a non-constant");
        acc = scale(acc, Rat(1) / d.lead().coeff);
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = primary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("missing ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(ring_, Rat(Int(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Poly::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

Poly parse_poly(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

}  // namespace amc
