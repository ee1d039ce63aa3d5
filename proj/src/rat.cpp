#include "amc/rat.hpp"

#include <cctype>

namespace amc {

Rat parse_rat(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error("empty rational literal");
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num)) throw Error("bad rational literal '" + s + "'");
  if (slash == std::string::npos) return Rat(Int(num));
  std::string den = s.substr(slash + 1);
  if (!valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error("bad rational literal '" + s + "'");
  Int d(den);
  if (d == 0) throw Error("zero denominator in '" + s + "'");
  return Rat(Int(num), d);
}

std::string to_string(const Rat& r) { return r.str(); }
std::string to_string(const Int& r) { return r.str(); }

Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Int falling_factorial(int n, int k) {
  if (k > n) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

Rat power(const Rat& base, unsigned exp) {
  Rat r = 1, b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    exp >>= 1u;
    if (exp) b *= b;
  }
  return r;
}

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

std::vector<std::string> to_strings(const RatVector& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

}  // namespace amc
