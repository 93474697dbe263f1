#include "kplab/lattice.hpp"

#include <unordered_map>

#include "kplab/flats.hpp"

namespace kplab {

namespace {

bool subset_of(const std::vector<std::uint64_t>& a,
               const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

SpanLattice::SpanLattice(const FieldSpec& f, const std::vector<Vector>& points,
                         std::size_t max_dim)
    : max_dim_(max_dim) {
  const std::size_t words = (points.size() + 63) / 64;
  auto make_node = [&](AffineFlat flat) {
    Node node{std::move(flat), 0, std::vector<std::uint64_t>(words, 0), 0};
    node.dim = node.flat.dim();
    for (std::size_t i = 0; i < points.size(); ++i)
      if (membership(f, points[i], node.flat)) {
        node.mask[i / 64] |= std::uint64_t{1} << (i % 64);
        ++node.count;
      }
    return node;
  };

  std::unordered_map<AffineFlat, std::size_t> seen;
  std::size_t level_begin = 0;
  for (const auto& p : points) {
    AffineFlat pt(f, LinearSubspace(rref(f, p.dim(), {})), p);
    if (seen.emplace(pt, nodes_.size()).second) nodes_.push_back(make_node(pt));
  }
  for (std::size_t d = 1; d <= max_dim; ++d) {
    const std::size_t level_end = nodes_.size();
    for (std::size_t t = level_begin; t < level_end; ++t) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (nodes_[t].mask[i / 64] >> (i % 64) & 1) continue;
        AffineFlat x(f, LinearSubspace(rref(f, points[i].dim(), {})),
                     points[i]);
        AffineFlat joined = join_flats(f, nodes_[t].flat, x);
        if (seen.count(joined)) continue;
        seen.emplace(joined, nodes_.size());
        nodes_.push_back(make_node(std::move(joined)));
      }
    }
    level_begin = level_end;
    if (level_begin == nodes_.size()) break;
  }
}

std::vector<mpz_class> SpanLattice::exact_hull_counts(unsigned m) const {
  std::vector<mpz_class> a(nodes_.size());
  for (std::size_t t = 0; t < nodes_.size(); ++t) {
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), nodes_[t].count, m);
    for (std::size_t s = 0; s < t; ++s)
      if (nodes_[s].dim < nodes_[t].dim && subset_of(nodes_[s].mask, nodes_[t].mask))
        total -= a[s];
    a[t] = total;
  }
  return a;
}

std::vector<mpz_class> SpanLattice::tuples_by_dimension(unsigned m) const {
  std::vector<mpz_class> out(max_dim_ + 1);
  auto a = exact_hull_counts(m);
  for (std::size_t t = 0; t < nodes_.size(); ++t) out[nodes_[t].dim] += a[t];
  return out;
}

}  // namespace kplab
