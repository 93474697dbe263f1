#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "kplab/linalg.hpp"

namespace kplab {

/// The flats spanned by subsets of a small point set, up to a maximum
/// dimension, each with the subset of points it contains.
class SpanLattice {
 public:
  struct Node {
    AffineFlat flat;
    std::size_t dim;
    std::vector<std::uint64_t> mask;  // bit i set iff points[i] on flat
    std::uint64_t count;
  };

  SpanLattice(const FieldSpec& f, const std::vector<Vector>& points,
              std::size_t max_dim);

  const std::vector<Node>& nodes() const { return nodes_; }

  /// For every node, the number of ordered m-tuples of points whose affine
  /// hull is exactly that node: A(t) = |t|^m - sum_{s < t} A(s).
  std::vector<mpz_class> exact_hull_counts(unsigned m) const;

  /// Ordered m-tuples grouped by hull dimension 0..max_dim.
  std::vector<mpz_class> tuples_by_dimension(unsigned m) const;

 private:
  std::size_t max_dim_;
  std::vector<Node> nodes_;  // sorted by dim
};

}  // namespace kplab
