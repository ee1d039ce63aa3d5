#pragma once

// Exact scalars. Rationals are GMP-backed through Boost.Multiprecision with
// expression templates disabled so they behave as plain value types inside
// Eigen containers.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rat>;
using RatVector = Vector<Rat>;
using IntMatrix = Matrix<Int>;

/// Base error for contract violations (bad input, mismatched rings, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const Int& r);

inline Int numerator_of(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator_of(const Rat& r) { return boost::multiprecision::denominator(r); }

Int factorial(int n);
Int binomial(int n, int k);
/// n (n-1) ... (n-k+1); zero when k > n.
Int falling_factorial(int n, int k);

Rat power(const Rat& base, unsigned exp);

Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);

std::vector<std::string> to_strings(const RatVector& v);

}  // namespace amc
