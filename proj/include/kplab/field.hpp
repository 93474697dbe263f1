#pragma once

#include <cstdint>
#include <vector>

namespace kplab {

/// Prime field GF(p), 2 <= p <= 2^16. Primality is checked on construction.
class FieldSpec {
 public:
  static constexpr std::uint32_t kMaxPrime = 1u << 16;

  explicit FieldSpec(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  // Raw residue arithmetic. Inputs must already be reduced.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }
  /// Extended Euclid. Throws DomainError on zero.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Residue tagged with its modulus so that mixing fields is caught.
class FieldElement {
 public:
  FieldElement(const FieldSpec& field, std::int64_t value);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inverse() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement(std::uint32_t p, std::uint32_t v) : value_(v), p_(p) {}
  void check_same(const FieldElement& o) const;

  std::uint32_t value_;
  std::uint32_t p_;
};

enum class FieldOp { add, sub, mul };

FieldElement field_arith(const FieldElement& a, const FieldElement& b,
                         FieldOp op);
FieldElement field_inverse(const FieldElement& a);

/// 0, 1, ..., p-1 in ascending order.
std::vector<FieldElement> enumerate_field(const FieldSpec& field);

}  // namespace kplab
