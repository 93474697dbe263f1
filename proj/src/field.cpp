#include "kplab/field.hpp"

#include <string>

#include "kplab/errors.hpp"

namespace kplab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(std::uint32_t p) : p_(p) {
  if (p < 2 || p > kMaxPrime)
    throw DomainError("field modulus " + std::to_string(p) +
                      " outside [2, 65536]");
  if (!is_prime(p))
    throw DomainError("field modulus " + std::to_string(p) + " is not prime");
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in GF(p)");
  std::int64_t r0 = p_, r1 = a % p_;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0);
}

FieldElement::FieldElement(const FieldSpec& field, std::int64_t value)
    : value_(field.reduce(value)), p_(field.p()) {}

void FieldElement::check_same(const FieldElement& o) const {
  if (p_ != o.p_)
    throw DomainError("mixing elements of GF(" + std::to_string(p_) +
                      ") and GF(" + std::to_string(o.p_) + ")");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  std::uint32_t s = value_ + o.value_;
  return {p_, s >= p_ ? s - p_ : s};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {p_, value_ >= o.value_ ? value_ - o.value_ : value_ + p_ - o.value_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {p_, static_cast<std::uint32_t>(
                  static_cast<std::uint64_t>(value_) * o.value_ % p_)};
}

FieldElement FieldElement::inverse() const {
  return {p_, FieldSpec(p_).inv(value_)};
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b,
                         FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return a + b;
    case FieldOp::sub:
      return a - b;
    case FieldOp::mul:
      return a * b;
  }
  return a;
}

FieldElement field_inverse(const FieldElement& a) { return a.inverse(); }

std::vector<FieldElement> enumerate_field(const FieldSpec& field) {
  std::vector<FieldElement> out;
  out.reserve(field.p());
  for (std::uint32_t v = 0; v < field.p(); ++v) out.emplace_back(field, v);
  return out;
}

}  // namespace kplab
