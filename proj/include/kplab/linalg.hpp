#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "kplab/field.hpp"

namespace kplab {

/// Largest supported ambient dimension. Internally vectors carry one extra
/// slot so augmented systems [A | b] fit in the same type.
inline constexpr std::size_t kMaxDim = 8;
inline constexpr std::size_t kVectorCapacity = kMaxDim + 1;

/// Point or direction in F^n, coordinates stored as reduced residues.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n);
  Vector(std::initializer_list<std::uint32_t> coords);

  std::size_t dim() const { return n_; }
  std::uint32_t operator[](std::size_t i) const { return c_[i]; }
  void set(std::size_t i, std::uint32_t v) {
    c_[i] = static_cast<std::uint16_t>(v);
  }
  bool is_zero() const;

  auto operator<=>(const Vector&) const = default;
  bool operator==(const Vector&) const = default;

 private:
  std::array<std::uint16_t, kVectorCapacity> c_{};
  std::uint8_t n_ = 0;
};

Vector vec_add(const FieldSpec& f, const Vector& a, const Vector& b);
Vector vec_sub(const FieldSpec& f, const Vector& a, const Vector& b);
Vector vec_scale(const FieldSpec& f, std::uint32_t s, const Vector& a);
/// a + s*b
Vector vec_axpy(const FieldSpec& f, const Vector& a, std::uint32_t s,
                const Vector& b);

/// Canonical reduced row echelon basis of a subspace of F^n.
struct RrefBasis {
  std::size_t ambient = 0;
  std::vector<Vector> rows;
  std::vector<std::uint8_t> pivots;

  std::size_t rank() const { return rows.size(); }
  bool operator==(const RrefBasis&) const = default;
  auto operator<=>(const RrefBasis&) const = default;
};

/// Unique RREF basis of span(vectors). Empty input yields the zero subspace
/// of dimension `ambient`.
RrefBasis rref(const FieldSpec& f, std::size_t ambient,
               std::span<const Vector> vectors);

/// v minus its projection along the pivots of `basis`: the canonical coset
/// representative, zero in every pivot coordinate.
Vector reduce(const FieldSpec& f, const RrefBasis& basis, Vector v);

/// Null space {h : row . h = 0 for all rows}, as an RREF basis.
RrefBasis null_space(const FieldSpec& f, const RrefBasis& basis);

std::uint32_t dot(const FieldSpec& f, const Vector& a, const Vector& b);

/// k-dimensional linear subspace of F^n.
class LinearSubspace {
 public:
  LinearSubspace() = default;
  explicit LinearSubspace(RrefBasis basis) : basis_(std::move(basis)) {}
  static LinearSubspace span(const FieldSpec& f, std::size_t ambient,
                             std::span<const Vector> generators);

  const RrefBasis& basis() const { return basis_; }
  std::size_t ambient() const { return basis_.ambient; }
  std::size_t dim() const { return basis_.rank(); }
  bool contains(const FieldSpec& f, const Vector& v) const {
    return reduce(f, basis_, v).is_zero();
  }

  bool operator==(const LinearSubspace&) const = default;
  auto operator<=>(const LinearSubspace&) const = default;

 private:
  RrefBasis basis_;
};

/// Affine flat x + W with a canonical representative (zero in the pivot
/// columns of W's RREF basis), so equal flats compare equal structurally.
class AffineFlat {
 public:
  AffineFlat() = default;
  AffineFlat(const FieldSpec& f, LinearSubspace direction,
             const Vector& through);

  const LinearSubspace& direction() const { return direction_; }
  const Vector& representative() const { return rep_; }
  std::size_t dim() const { return direction_.dim(); }
  std::size_t ambient() const { return direction_.ambient(); }

  bool operator==(const AffineFlat&) const = default;
  auto operator<=>(const AffineFlat&) const = default;

 private:
  LinearSubspace direction_;
  Vector rep_;
};

bool membership(const FieldSpec& f, const Vector& point,
                const AffineFlat& flat);

struct AffineHull {
  std::size_t dimension;
  AffineFlat flat;
};

/// Smallest affine flat containing all points. Throws DomainError on empty
/// input.
AffineHull affine_hull(const FieldSpec& f, std::span<const Vector> points);

/// Dimension of the affine hull only; cheaper than affine_hull.
std::size_t affine_rank(const FieldSpec& f, std::span<const Vector> points);

/// Solution set of A x = b where each row is [a_0 .. a_{n-1} | b] packed
/// into a Vector of dimension n + 1. nullopt when inconsistent.
std::optional<AffineFlat> solve_affine(const FieldSpec& f, std::size_t n,
                                       std::span<const Vector> augmented);

/// Bijective encoding of F^n into [0, p^n), ordered like Vector's <.
class PointCodec {
 public:
  PointCodec(const FieldSpec& f, std::size_t n);
  std::uint64_t size() const { return size_; }
  std::size_t dim() const { return n_; }
  std::uint64_t encode(const Vector& v) const;
  Vector decode(std::uint64_t code) const;

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::uint64_t size_;
};

std::size_t hash_value(const Vector& v);
std::size_t hash_value(const LinearSubspace& s);
std::size_t hash_value(const AffineFlat& a);

}  // namespace kplab

template <>
struct std::hash<kplab::Vector> {
  std::size_t operator()(const kplab::Vector& v) const {
    return kplab::hash_value(v);
  }
};
template <>
struct std::hash<kplab::LinearSubspace> {
  std::size_t operator()(const kplab::LinearSubspace& s) const {
    return kplab::hash_value(s);
  }
};
template <>
struct std::hash<kplab::AffineFlat> {
  std::size_t operator()(const kplab::AffineFlat& a) const {
    return kplab::hash_value(a);
  }
};
