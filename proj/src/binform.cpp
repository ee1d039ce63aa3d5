#include "amc/binform.hpp"

#include "amc/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace amc {

namespace {

// Dense univariate polynomials, coefficient k of x^k.
using Uni = std::vector<Rat>;

void trim(Uni& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

Uni uni_rem(Uni a, const Uni& b) {
  trim(a);
  const std::size_t n = b.size();
  while (a.size() >= n) {
    const Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - n;
    for (std::size_t i = 0; i < n; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Uni uni_gcd(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Y-adic valuation of a form and its dehomogenization at Y = 1.
int y_valuation(const BinaryForm& f) { return f.first_nonzero(); }

Uni dehomogenize(const BinaryForm& f) {
  const int d = f.degree();
  Uni u(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) u[static_cast<std::size_t>(k)] = f[d - k];
  trim(u);
  return u;
}

BinaryForm homogenize(const Uni& u, int degree) {
  RatVector c = RatVector::Zero(degree + 1);
  for (std::size_t k = 0; k < u.size(); ++k) c(degree - static_cast<int>(k)) = u[k];
  return BinaryForm(c);
}

std::vector<Int> positive_divisors(Int n, const Int& cap = Int("1000000000000")) {
  if (n < 0) n = -n;
  std::vector<Int> small, large;
  if (n == 0 || n > cap) return {};
  for (Int i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      small.push_back(i);
      if (i * i != n) large.push_back(n / i);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Clears denominators and content of a univariate polynomial.
std::vector<Int> integerize(const Uni& u) {
  Int l = 1;
  for (const auto& c : u) l = lcm(l, denominator_of(c));
  std::vector<Int> out;
  Int g = 0;
  for (const auto& c : u) {
    out.push_back(numerator_of(c) * (l / denominator_of(c)));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- BinaryForm

BinaryForm::BinaryForm(RatVector coeffs) : c_(std::move(coeffs)) {
  if (c_.size() == 0) throw Error("binary form needs at least one coefficient");
}

BinaryForm BinaryForm::zero(int degree) {
  if (degree < 0) throw Error("negative degree");
  return BinaryForm(RatVector::Zero(degree + 1));
}

BinaryForm BinaryForm::monomial(int degree, int i, const Rat& c) {
  if (i < 0 || i > degree) throw Error("monomial index out of range");
  BinaryForm f = zero(degree);
  f.c_(i) = c;
  return f;
}

BinaryForm BinaryForm::from_divided_powers(const RatVector& b) {
  const int d = static_cast<int>(b.size()) - 1;
  RatVector c(b.size());
  for (int i = 0; i <= d; ++i) c(i) = b(i) / Rat(factorial(d - i) * factorial(i));
  return BinaryForm(c);
}

BinaryForm BinaryForm::linear_power(const Rat& alpha, const Rat& beta, int d) {
  RatVector c(d + 1);
  Rat ap = 1;
  std::vector<Rat> bp(static_cast<std::size_t>(d + 1), Rat(1));
  for (int i = 1; i <= d; ++i) bp[static_cast<std::size_t>(i)] = bp[static_cast<std::size_t>(i - 1)] * beta;
  for (int i = d; i >= 0; --i) {
    c(i) = Rat(binomial(d, i)) * ap * bp[static_cast<std::size_t>(i)];
    ap *= alpha;
  }
  return BinaryForm(c);
}

RatVector BinaryForm::divided_powers() const {
  const int d = degree();
  RatVector b(c_.size());
  for (int i = 0; i <= d; ++i) b(i) = c_(i) * Rat(factorial(d - i) * factorial(i));
  return b;
}

Rat BinaryForm::eval(const Rat& x, const Rat& y) const {
  const int d = degree();
  Rat sum = 0;
  for (int i = 0; i <= d; ++i) {
    if (c_(i) == 0) continue;
    sum += c_(i) * power(x, static_cast<unsigned>(d - i)) *
           power(y, static_cast<unsigned>(i));
  }
  return sum;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  if (degree() != o.degree()) throw Error("adding binary forms of different degrees");
  return BinaryForm(RatVector(c_ + o.c_));
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const {
  if (degree() != o.degree()) throw Error("subtracting binary forms of different degrees");
  return BinaryForm(RatVector(c_ - o.c_));
}

BinaryForm BinaryForm::operator-() const { return BinaryForm(RatVector(-c_)); }

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  const int m = degree(), n = o.degree();
  RatVector c = RatVector::Zero(m + n + 1);
  for (int i = 0; i <= m; ++i) {
    if (c_(i) == 0) continue;
    for (int j = 0; j <= n; ++j)
      if (o.c_(j) != 0) c(i + j) += c_(i) * o.c_(j);
  }
  return BinaryForm(c);
}

BinaryForm BinaryForm::operator*(const Rat& s) const { return BinaryForm(RatVector(c_ * s)); }

BinaryForm BinaryForm::pow(int n) const {
  BinaryForm r = monomial(0, 0);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool BinaryForm::operator==(const BinaryForm& o) const { return c_.size() == o.c_.size() && c_ == o.c_; }

BinaryForm BinaryForm::diff_x() const {
  const int d = degree();
  if (d == 0) return zero(0);
  RatVector c(d);
  for (int i = 0; i < d; ++i) c(i) = c_(i) * (d - i);
  return BinaryForm(c);
}

BinaryForm BinaryForm::diff_y() const {
  const int d = degree();
  if (d == 0) return zero(0);
  RatVector c(d);
  for (int i = 0; i < d; ++i) c(i) = c_(i + 1) * (i + 1);
  return BinaryForm(c);
}

int BinaryForm::first_nonzero() const {
  for (int i = 0; i < c_.size(); ++i)
    if (c_(i) != 0) return i;
  return -1;
}

int BinaryForm::last_nonzero() const {
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
    if (c_(i) != 0) return i;
  return -1;
}

BinaryForm BinaryForm::normalized_leading() const {
  const int i = first_nonzero();
  return i < 0 ? *this : *this * (Rat(1) / c_(i));
}

BinaryForm BinaryForm::normalized_trailing() const {
  const int i = last_nonzero();
  return i < 0 ? *this : *this * (Rat(1) / c_(i));
}

std::string BinaryForm::to_string(std::string_view x, std::string_view y) const {
  auto ring = make_ring({std::string(x), std::string(y)}, MonomialOrder::lex());
  return to_poly(ring).to_string();
}

Poly BinaryForm::to_poly(const Ring& ring, std::size_t x, std::size_t y) const {
  const int d = degree();
  std::vector<Term> terms;
  for (int i = 0; i <= d; ++i) {
    if (c_(i) == 0) continue;
    std::vector<Monomial::Exp> e(ring->arity(), 0);
    e[x] = static_cast<Monomial::Exp>(d - i);
    e[y] = static_cast<Monomial::Exp>(e[y] + i);
    terms.push_back({Monomial(std::move(e)), c_(i)});
  }
  return Poly::from_terms(ring, std::move(terms));
}

BinaryForm form_from_poly(const Poly& p, std::size_t x, std::size_t y) {
  if (p.is_zero()) throw Error("cannot infer the degree of the zero polynomial");
  if (!p.is_homogeneous()) throw Error("binary form must be homogeneous: " + p.to_string());
  const int d = p.total_degree();
  RatVector c = RatVector::Zero(d + 1);
  for (const auto& t : p.terms()) {
    if (t.mono[x] + t.mono[y] != t.mono.degree()) throw Error("unexpected variable in binary form " + p.to_string());
    c(t.mono[y]) += t.coeff;
  }
  return BinaryForm(c);
}

BinaryForm parse_binary_form(std::string_view text, std::optional<int> degree) {
  static const Ring ring = make_ring({"S", "T", "s", "t"}, MonomialOrder::lex());
  Poly p = parse_poly(text, ring);
  if (p.is_zero()) {
    if (!degree) throw Error("cannot infer the degree of the zero form");
    return BinaryForm::zero(*degree);
  }
  auto sup = p.support();
  bool upper = false, lower = false;
  for (auto i : sup) (i < 2 ? upper : lower) = true;
  if (upper && lower) throw Error("form mixes S,T and s,t: " + std::string(text));
  BinaryForm f = lower ? form_from_poly(p, 2, 3) : form_from_poly(p, 0, 1);
  if (degree && f.degree() != *degree)
    throw Error("expected a form of degree " + std::to_string(*degree) + ": " + std::string(text));
  return f;
}

// ---------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(RatVector coords) : x_(std::move(coords)) {
  if (x_.size() == 0 || x_.isZero()) throw Error("projective point needs a nonzero coordinate");
}

ProjPoint ProjPoint::parse(std::string_view csv) {
  std::vector<Rat> v;
  std::string cur;
  for (char ch : std::string(csv) + ",") {
    if (ch == ',') {
      v.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  RatVector x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  return ProjPoint(x);
}

ProjPoint ProjPoint::torus_fixed(int d, int i) {
  if (i < 0 || i > d) throw Error("torus-fixed point index out of range");
  RatVector x = RatVector::Zero(d + 1);
  x(i) = 1;
  return ProjPoint(x);
}

ProjPoint ProjPoint::normalized() const {
  for (Eigen::Index i = 0; i < x_.size(); ++i)
    if (x_(i) != 0) return ProjPoint(RatVector(x_ / x_(i)));
  return *this;
}

bool ProjPoint::projectively_equal(const ProjPoint& o) const {
  return x_.size() == o.x_.size() && normalized().x_ == o.normalized().x_;
}

std::string ProjPoint::to_string() const {
  std::string s;
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    if (i) s += ",";
    s += amc::to_string(x_(i));
  }
  return s;
}

// ---------------------------------------------------------------- apolarity

BinaryForm apolar_pairing(const BinaryForm& F, const BinaryForm& f) {
  const int j = F.degree(), i = f.degree();
  if (j > i) throw Error("apolar pairing needs deg F <= deg f");
  RatVector out = RatVector::Zero(i - j + 1);
  for (int k = 0; k <= j; ++k) {
    if (F[k] == 0) continue;
    for (int r = 0; r <= i - j; ++r) {
      const int m = r + k;
      if (f[m] == 0) continue;
      out(r) += F[k] * f[m] * Rat(falling_factorial(i - m, j - k) * falling_factorial(m, k));
    }
  }
  return BinaryForm(out);
}

RatMatrix catalecticant(const BinaryForm& f, int e) {
  const int d = f.degree();
  if (e < 0 || e > d) throw Error("catalecticant degree out of range");
  RatMatrix m = RatMatrix::Zero(d - e + 1, e + 1);
  for (int k = 0; k <= e; ++k)
    for (int r = 0; r <= d - e; ++r) {
      const int idx = r + k;
      if (f[idx] != 0) m(r, k) = f[idx] * Rat(falling_factorial(d - idx, e - k) * falling_factorial(idx, k));
    }
  return m;
}

RatMatrix ideal_degree_part(const std::vector<BinaryForm>& gens, int e) {
  std::vector<RatVector> rows;
  for (const auto& g : gens) {
    const int m = e - g.degree();
    for (int k = 0; k <= m; ++k) rows.push_back((g * BinaryForm::monomial(m, k)).coeffs());
  }
  RatMatrix out(static_cast<Eigen::Index>(rows.size()), e + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return out;
}

int perp_dimension(const BinaryForm& f, int e) {
  if (e > f.degree()) return e + 1;
  return static_cast<int>(e + 1 - exact_rank(catalecticant(f, e)));
}

ApolarPair apolar_ideal(const BinaryForm& f) {
  if (f.is_zero()) throw Error("apolar ideal of the zero form");
  const int d = f.degree();
  int d1 = -1;
  RatMatrix k1;
  for (int e = 1; e <= d + 1; ++e) {
    if (e > d) {
      // Every form of degree d+1 annihilates f.
      k1 = RatMatrix::Identity(e + 1, e + 1);
      d1 = e;
      break;
    }
    k1 = nullspace(catalecticant(f, e));
    if (k1.cols() > 0) {
      d1 = e;
      break;
    }
  }
  const int d2 = d + 2 - d1;
  ApolarPair pair;
  pair.d = d;
  if (d1 == d2) {
    if (k1.cols() != 2) throw Error("unexpected kernel dimension in apolar ideal");
    // Reduced echelon form on the leading monomials: the row with the later
    // pivot is g1, the other one (already reduced against it) is g2.
    auto ech = reduced_row_echelon(RatMatrix(k1.transpose()));
    pair.g1 = BinaryForm(RatVector(ech.reduced.row(1).transpose())).normalized_leading();
    pair.g2 = BinaryForm(RatVector(ech.reduced.row(0).transpose())).normalized_trailing();
  } else {
    if (k1.cols() != 1) throw Error("unexpected kernel dimension in apolar ideal");
    pair.g1 = BinaryForm(RatVector(k1.col(0))).normalized_leading();
    const int p = pair.g1.first_nonzero();
    RatMatrix k2 = d2 > d ? RatMatrix(RatMatrix::Identity(d2 + 1, d2 + 1)) : nullspace(catalecticant(f, d2));
    const int span = d2 - d1;
    RatMatrix restricted(span + 1, k2.cols());
    for (int i = 0; i <= span; ++i) restricted.row(i) = k2.row(p + i);
    RatMatrix comb = nullspace(restricted);
    if (comb.cols() != 1) throw Error("unexpected complement dimension in apolar ideal");
    pair.g2 = BinaryForm(RatVector(k2 * comb.col(0))).normalized_trailing();
  }
  if (resultant(pair.g1, pair.g2) == 0) throw Error("apolar generators share a root");
  return pair;
}

BinaryForm point_to_form(const ProjPoint& p) { return BinaryForm::from_divided_powers(p.coords()); }

ProjPoint form_to_point(const BinaryForm& f) { return ProjPoint(f.divided_powers()); }

BinaryForm form_from_apolar(const BinaryForm& g1, const BinaryForm& g2, int d) {
  RatMatrix rows = ideal_degree_part({g1, g2}, d);
  RatMatrix ker = nullspace(rows);
  if (ker.cols() != 1) throw Error("(g1, g2) is not the apolar ideal of a single form in degree " + std::to_string(d));
  return BinaryForm::from_divided_powers(ker.col(0));
}

ApolarPair make_apolar_pair(const BinaryForm& g1, const BinaryForm& g2, int d) {
  ApolarPair pair{g1, g2, d};
  if (pair.d1() > pair.d2()) std::swap(pair.g1, pair.g2);
  if (pair.d1() + pair.d2() != d + 2) throw Error("apolar generator degrees must sum to d+2");
  if (pair.g1.is_zero() || pair.g2.is_zero()) throw Error("apolar generators must be nonzero");
  if (resultant(pair.g1, pair.g2) == 0) throw Error("apolar generators share a root");
  return pair;
}

int rnc_rank(const ProjPoint& p) { return apolar_ideal(point_to_form(p)).d1(); }

// ---------------------------------------------------------------- gcd etc.

Rat resultant(const BinaryForm& a, const BinaryForm& b) {
  const int m = a.degree(), n = b.degree();
  if (m + n == 0) return Rat(1);
  RatMatrix s = RatMatrix::Zero(m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s(r, r + i) = a[i];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) s(n + r, r + j) = b[j];
  return fraction_free_determinant(s);
}

BinaryForm binary_gcd(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero forms");
  if (a.is_zero()) return b.normalized_leading();
  if (b.is_zero()) return a.normalized_leading();
  const int v = std::min(y_valuation(a), y_valuation(b));
  Uni g = uni_gcd(dehomogenize(a), dehomogenize(b));
  BinaryForm h = homogenize(g, static_cast<int>(g.size()) - 1);
  return (h * BinaryForm::monomial(v, v)).normalized_leading();
}

BinaryForm exact_divide(const BinaryForm& a, const BinaryForm& b) {
  if (b.is_zero()) throw Error("division by the zero form");
  const int m = a.degree() - b.degree();
  if (m < 0) throw Error("divisor has larger degree");
  const int p = b.first_nonzero();
  RatVector q = RatVector::Zero(m + 1);
  for (int i = 0; i <= m; ++i) {
    Rat acc = i + p <= a.degree() ? a[i + p] : Rat(0);
    for (int k = std::max(0, i + p - b.degree()); k < i; ++k) acc -= b[i + p - k] * q(k);
    q(i) = acc / b[p];
  }
  BinaryForm quot(q);
  if (!(quot * b == a)) throw Error("form is not divisible");
  return quot;
}

bool divides(const BinaryForm& b, const BinaryForm& a) {
  if (a.is_zero()) return true;
  if (b.degree() > a.degree()) return false;
  try {
    exact_divide(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

BinaryForm squarefree_part(const BinaryForm& g) {
  if (g.degree() <= 1) return g.normalized_leading();
  BinaryForm h = binary_gcd(g.diff_x(), g.diff_y());
  return exact_divide(g, h).normalized_leading();
}

std::string to_string(MultiplicityType t) {
  switch (t) {
    case MultiplicityType::triple: return "triple";
    case MultiplicityType::double_simple: return "double-simple";
    case MultiplicityType::three_simple: return "three-simple";
  }
  return "?";
}

MultiplicityType multiplicity_type(const BinaryForm& cubic) {
  if (cubic.degree() != 3 || cubic.is_zero()) throw Error("multiplicity type needs a nonzero cubic");
  const int g = binary_gcd(cubic.diff_x(), cubic.diff_y()).degree();
  if (g == 2) return MultiplicityType::triple;
  if (g == 1) return MultiplicityType::double_simple;
  return MultiplicityType::three_simple;
}

MultiplicityType multiplicity_type(const ApolarPair& pair) {
  if (pair.d1() != 3) throw Error("multiplicity type is defined for rank-3 centers only");
  return multiplicity_type(pair.g1);
}

std::vector<BinaryForm> rational_linear_factors(const BinaryForm& g) {
  std::vector<BinaryForm> out;
  if (g.is_zero()) return out;
  BinaryForm rest = g;
  const BinaryForm y = BinaryForm::monomial(1, 1);
  while (rest.degree() > 0 && rest[0] == 0) {
    out.push_back(y);
    rest = exact_divide(rest, y);
  }
  const BinaryForm x = BinaryForm::monomial(1, 0);
  while (rest.degree() > 0 && rest[rest.degree()] == 0) {
    out.push_back(x);
    rest = exact_divide(rest, x);
  }
  if (rest.degree() == 0) return out;
  // rest(x, 1) has degree deg(rest) and nonzero constant term; its rational
  // roots r give the factors X - rY.
  auto z = integerize(dehomogenize(rest));
  std::vector<Rat> candidates;
  for (const auto& p : positive_divisors(z.front()))
    for (const auto& q : positive_divisors(z.back())) {
      candidates.push_back(Rat(p, q));
      candidates.push_back(Rat(-p, q));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    RatVector c(2);
    c << 1, -r;
    BinaryForm lin(c);
    while (rest.degree() > 0 && rest.eval(r, Rat(1)) == 0) {
      out.push_back(lin);
      rest = exact_divide(rest, lin);
    }
  }
  return out;
}

std::optional<BinaryForm> rational_quadratic_factor(const BinaryForm& g) {
  if (g.degree() < 2 || g.is_zero()) return std::nullopt;
  auto lins = rational_linear_factors(g);
  if (lins.size() >= 2) return (lins[0] * lins[1]).normalized_leading();
  BinaryForm rest = g;
  for (const auto& l : lins) rest = exact_divide(rest, l);
  if (rest.degree() < 2) return std::nullopt;
  if (rest.degree() == 2) return rest.normalized_leading();
  // Kronecker: a quadratic factor q satisfies q(x) | u(x) at three integer points.
  auto z = integerize(dehomogenize(rest));
  auto value = [&](long x) {
    Int v = 0, xp = 1;
    for (const auto& c : z) {
      v += c * xp;
      xp *= x;
    }
    return v;
  };
  const Int v0 = value(0), v1 = value(1), vm = value(-1);
  if (v0 == 0 || v1 == 0 || vm == 0) return std::nullopt;
  auto d0 = positive_divisors(v0), d1 = positive_divisors(v1), dm = positive_divisors(vm);
  if (d0.empty() || d1.empty() || dm.empty()) return std::nullopt;
  if (d0.size() * d1.size() * dm.size() * 4 > 4000000) return std::nullopt;
  for (const auto& c : d0)
    for (const auto& a1 : d1)
      for (int s1 : {1, -1})
        for (const auto& am : dm)
          for (int sm : {1, -1}) {
            const Int q1 = a1 * s1, qm = am * sm;
            const Int sum = q1 + qm - 2 * c;
            const Int diff = q1 - qm;
            if (sum % 2 != 0 || diff % 2 != 0) continue;
            const Int a = sum / 2, b = diff / 2;
            if (a == 0 || z.back() % a != 0) continue;
            RatVector coeffs(3);
            coeffs << Rat(a), Rat(b), Rat(c);
            BinaryForm q(coeffs);
            if (divides(q, rest)) return q.normalized_leading();
          }
  return std::nullopt;
}

}  // namespace amc
