#include "kplab/magnitude.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "kplab/errors.hpp"

namespace kplab {

namespace {

constexpr double kMaxCompareBits = double(1u << 26);

}  // namespace

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Magnitude Magnitude::zero() {
  Magnitude m;
  m.zero_ = true;
  return m;
}

Magnitude Magnitude::of(const mpz_class& v) {
  if (v < 0) throw DomainError("Magnitude of a negative number");
  if (v == 0) return zero();
  Magnitude m;
  m.add_factor(v, 1);
  return m;
}

Magnitude Magnitude::of(const mpq_class& v) {
  if (v < 0) throw DomainError("Magnitude of a negative number");
  if (v == 0) return zero();
  Magnitude m;
  m.add_factor(v.get_num(), 1);
  m.add_factor(v.get_den(), -1);
  return m;
}

Magnitude Magnitude::power(const mpz_class& base, const mpq_class& exponent) {
  if (base < 0) throw DomainError("Magnitude of a negative base");
  if (base == 0) {
    if (exponent <= 0) throw DomainError("zero to a non-positive power");
    return zero();
  }
  Magnitude m;
  m.add_factor(base, exponent);
  return m;
}

void Magnitude::add_factor(const mpz_class& base, const mpq_class& exponent) {
  if (base == 1 || exponent == 0) return;
  auto [it, inserted] = factors_.try_emplace(base, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) factors_.erase(it);
  }
}

Magnitude& Magnitude::operator*=(const Magnitude& o) {
  if (zero_ || o.zero_) {
    *this = zero();
    return *this;
  }
  for (const auto& [b, e] : o.factors_) add_factor(b, e);
  return *this;
}

Magnitude& Magnitude::operator/=(const Magnitude& o) {
  if (o.zero_) throw DomainError("Magnitude division by zero");
  if (zero_) return *this;
  for (const auto& [b, e] : o.factors_) add_factor(b, -e);
  return *this;
}

Magnitude Magnitude::pow(const mpq_class& exponent) const {
  if (zero_) {
    if (exponent <= 0) throw DomainError("zero to a non-positive power");
    return zero();
  }
  Magnitude m;
  for (const auto& [b, e] : factors_) m.add_factor(b, e * exponent);
  return m;
}

Real Magnitude::log() const {
  if (zero_) return -std::numeric_limits<Real>::infinity();
  Real acc = 0;
  for (const auto& [b, e] : factors_) {
    Real lb = boost::multiprecision::log(Real(b.get_str()));
    acc += lb * Real(e.get_num().get_str()) / Real(e.get_den().get_str());
  }
  return acc;
}

Real Magnitude::value() const {
  if (zero_) return 0;
  return boost::multiprecision::exp(log());
}

int compare(const Magnitude& a, const Magnitude& b) {
  if (a.zero_ || b.zero_) return int(!a.zero_) - int(!b.zero_);
  Magnitude q = a / b;
  if (q.factors_.empty()) return 0;
  mpz_class lcm = 1;
  double bits = 0;
  for (const auto& [base, e] : q.factors_)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
  for (const auto& [base, e] : q.factors_)
    bits += std::abs(e.get_d()) * lcm.get_d() *
            static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2));
  if (bits > kMaxCompareBits)
    throw BudgetError("exact magnitude comparison too large", bits);
  mpz_class num = 1, den = 1;
  for (const auto& [base, e] : q.factors_) {
    mpz_class scaled = e.get_num() * (lcm / e.get_den());
    if (scaled > 0)
      num *= pow_mpz(base, scaled.get_ui());
    else
      den *= pow_mpz(base, mpz_class(-scaled).get_ui());
  }
  return cmp(num, den) < 0 ? -1 : (cmp(num, den) > 0 ? 1 : 0);
}

std::string Magnitude::str() const {
  if (zero_) return "0";
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [b, e] : factors_) {
    if (!out.empty()) out += "*";
    out += b.get_str();
    if (e != 1) out += "^(" + e.get_str() + ")";
  }
  return out;
}

std::string to_sig6(const Real& x) { return to_sig6(x.convert_to<double>()); }

std::string to_sig6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace kplab
