#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "kplab/linalg.hpp"

namespace kplab {

/// Number of k-dimensional subspaces of GF(p)^n.
mpz_class gaussian_binomial(long n, long k, std::uint32_t p);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::uint8_t>> pivot_patterns(std::size_t n,
                                                      std::size_t k);

/// Lazy enumeration of G(n,k) over GF(p).
///
/// Subspaces come out as canonical RREF bases, ordered lexicographically by
/// pivot pattern and then by the free entries (last free entry fastest).
/// A stream may be restricted to a single pivot pattern so that consumers
/// can split the Grassmannian across workers.
class GrassmannianStream {
 public:
  GrassmannianStream(const FieldSpec& f, std::size_t n, std::size_t k);
  GrassmannianStream(const FieldSpec& f, std::size_t n, std::size_t k,
                     std::size_t pattern_index);

  std::optional<LinearSubspace> next();

 private:
  void load_pattern();

  FieldSpec field_;
  std::size_t n_, k_;
  std::vector<std::vector<std::uint8_t>> patterns_;
  std::size_t pattern_ = 0;
  std::size_t pattern_end_;
  // (row, column) of each free entry under the current pattern.
  std::vector<std::pair<std::uint8_t, std::uint8_t>> free_;
  std::vector<std::uint32_t> values_;
  bool fresh_pattern_ = true;
};

GrassmannianStream enumerate_grassmannian(std::size_t n, std::size_t k,
                                          const FieldSpec& f);
std::vector<LinearSubspace> grassmannian(std::size_t n, std::size_t k,
                                         const FieldSpec& f);

/// The p^k points of a flat: representative + sum a_i row_i, coefficient
/// vectors in lexicographic order.
class FlatPointStream {
 public:
  FlatPointStream(const FieldSpec& f, const AffineFlat& flat);
  std::optional<Vector> next();

 private:
  FieldSpec field_;
  AffineFlat flat_;
  std::vector<std::uint32_t> coeff_;
  bool done_ = false;
};

FlatPointStream enumerate_points(const FieldSpec& f, const AffineFlat& flat);
std::vector<Vector> flat_points(const FieldSpec& f, const AffineFlat& flat);

/// Common points of all flats, or nullopt if they are disjoint.
std::optional<AffineFlat> intersect_flats(const FieldSpec& f,
                                          std::span<const AffineFlat> flats);

/// Smallest flat containing both.
AffineFlat join_flats(const FieldSpec& f, const AffineFlat& a,
                      const AffineFlat& b);

/// True iff no two flats share a direction.
bool is_direction_separated(std::span<const AffineFlat> family);

/// All p^{n-k} cosets x + W of a subspace, ordered by representative.
std::vector<AffineFlat> cosets(const FieldSpec& f, const LinearSubspace& w);

}  // namespace kplab
