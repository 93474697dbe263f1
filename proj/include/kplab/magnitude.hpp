#pragma once

#include <map>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

namespace kplab {

using Real = boost::multiprecision::cpp_bin_float_50;

/// Nonnegative real of the form  b_1^{e_1} * ... * b_m^{e_m}  with positive
/// integer bases and rational exponents, or exactly zero.
///
/// Products, quotients and rational powers stay exact. Comparisons between
/// two magnitudes are decided over the integers: with L the lcm of all
/// exponent denominators, x <= y iff x^L <= y^L, and both sides are then
/// integer powers.
class Magnitude {
 public:
  Magnitude() = default;  // 1

  static Magnitude zero();
  static Magnitude of(const mpz_class& v);
  static Magnitude of(const mpq_class& v);
  static Magnitude power(const mpz_class& base, const mpq_class& exponent);

  bool is_zero() const { return zero_; }

  Magnitude& operator*=(const Magnitude& o);
  Magnitude& operator/=(const Magnitude& o);
  friend Magnitude operator*(Magnitude a, const Magnitude& b) { return a *= b; }
  friend Magnitude operator/(Magnitude a, const Magnitude& b) { return a /= b; }
  Magnitude pow(const mpq_class& exponent) const;

  Real value() const;
  double to_double() const { return value().convert_to<double>(); }
  /// Natural log; -inf for zero.
  Real log() const;

  /// Exact three-way comparison.
  friend int compare(const Magnitude& a, const Magnitude& b);
  friend bool operator==(const Magnitude& a, const Magnitude& b) {
    return compare(a, b) == 0;
  }
  friend bool operator<(const Magnitude& a, const Magnitude& b) {
    return compare(a, b) < 0;
  }
  friend bool operator<=(const Magnitude& a, const Magnitude& b) {
    return compare(a, b) <= 0;
  }

  /// e.g. "3^(6/5)*13^(4/5)"
  std::string str() const;

 private:
  void add_factor(const mpz_class& base, const mpq_class& exponent);

  std::map<mpz_class, mpq_class> factors_;
  bool zero_ = false;
};

/// Six significant digits, as used in reports.
std::string to_sig6(const Real& x);
std::string to_sig6(double x);

mpz_class pow_mpz(const mpz_class& base, unsigned long e);

}  // namespace kplab
