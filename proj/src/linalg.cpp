#include "kplab/linalg.hpp"

#include <string>
#include <utility>

#include "kplab/errors.hpp"

namespace kplab {

namespace {

void check_dim(std::size_t n) {
  if (n > kVectorCapacity)
    throw DomainError("vector dimension " + std::to_string(n) +
                      " exceeds capacity");
}

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Gauss-Jordan on `rows` in place over the first `cols` columns; returns the
// pivot columns. rows[0..pivots.size()) is the RREF afterwards.
std::vector<std::uint8_t> gauss_jordan(const FieldSpec& f,
                                       std::vector<Vector>& rows,
                                       std::size_t cols) {
  std::vector<std::uint8_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    std::uint32_t inv = f.inv(rows[rank][c]);
    if (inv != 1) rows[rank] = vec_scale(f, inv, rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      rows[r] = vec_axpy(f, rows[r], f.neg(rows[r][c]), rows[rank]);
    }
    pivots.push_back(static_cast<std::uint8_t>(c));
    ++rank;
  }
  return pivots;
}

}  // namespace

Vector::Vector(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
  check_dim(n);
}

Vector::Vector(std::initializer_list<std::uint32_t> coords)
    : n_(static_cast<std::uint8_t>(coords.size())) {
  check_dim(coords.size());
  std::size_t i = 0;
  for (auto c : coords) c_[i++] = static_cast<std::uint16_t>(c);
}

bool Vector::is_zero() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

Vector vec_add(const FieldSpec& f, const Vector& a, const Vector& b) {
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.set(i, f.add(a[i], b[i]));
  return out;
}

Vector vec_sub(const FieldSpec& f, const Vector& a, const Vector& b) {
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.set(i, f.sub(a[i], b[i]));
  return out;
}

Vector vec_scale(const FieldSpec& f, std::uint32_t s, const Vector& a) {
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.set(i, f.mul(s, a[i]));
  return out;
}

Vector vec_axpy(const FieldSpec& f, const Vector& a, std::uint32_t s,
                const Vector& b) {
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    out.set(i, f.add(a[i], f.mul(s, b[i])));
  return out;
}

std::uint32_t dot(const FieldSpec& f, const Vector& a, const Vector& b) {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

RrefBasis rref(const FieldSpec& f, std::size_t ambient,
               std::span<const Vector> vectors) {
  std::vector<Vector> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.dim() != ambient)
      throw DomainError("rref: vector of dimension " + std::to_string(v.dim()) +
                        " in ambient dimension " + std::to_string(ambient));
    if (!v.is_zero()) rows.push_back(v);
  }
  RrefBasis out;
  out.ambient = ambient;
  out.pivots = gauss_jordan(f, rows, ambient);
  rows.resize(out.pivots.size());
  out.rows = std::move(rows);
  return out;
}

Vector reduce(const FieldSpec& f, const RrefBasis& basis, Vector v) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    std::uint32_t c = v[basis.pivots[i]];
    if (c != 0) v = vec_axpy(f, v, f.neg(c), basis.rows[i]);
  }
  return v;
}

RrefBasis null_space(const FieldSpec& f, const RrefBasis& basis) {
  const std::size_t n = basis.ambient;
  std::vector<bool> is_pivot(n, false);
  for (auto c : basis.pivots) is_pivot[c] = true;
  std::vector<Vector> gens;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector h(n);
    h.set(free, 1);
    for (std::size_t i = 0; i < basis.rows.size(); ++i)
      h.set(basis.pivots[i], f.neg(basis.rows[i][free]));
    gens.push_back(h);
  }
  return rref(f, n, gens);
}

LinearSubspace LinearSubspace::span(const FieldSpec& f, std::size_t ambient,
                                    std::span<const Vector> generators) {
  return LinearSubspace(rref(f, ambient, generators));
}

AffineFlat::AffineFlat(const FieldSpec& f, LinearSubspace direction,
                       const Vector& through)
    : direction_(std::move(direction)),
      rep_(reduce(f, direction_.basis(), through)) {
  if (through.dim() != direction_.ambient())
    throw DomainError("flat representative has wrong dimension");
}

bool membership(const FieldSpec& f, const Vector& point,
                const AffineFlat& flat) {
  return reduce(f, flat.direction().basis(), point) == flat.representative();
}

AffineHull affine_hull(const FieldSpec& f, std::span<const Vector> points) {
  if (points.empty()) throw DomainError("affine hull of an empty point list");
  const std::size_t n = points[0].dim();
  std::vector<Vector> diffs;
  diffs.reserve(points.size());
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back(vec_sub(f, points[i], points[0]));
  LinearSubspace dir(rref(f, n, diffs));
  std::size_t d = dir.dim();
  return {d, AffineFlat(f, std::move(dir), points[0])};
}

std::size_t affine_rank(const FieldSpec& f, std::span<const Vector> points) {
  if (points.empty()) throw DomainError("affine rank of an empty point list");
  std::vector<Vector> rows;
  rows.reserve(points.size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    Vector d = vec_sub(f, points[i], points[0]);
    if (!d.is_zero()) rows.push_back(d);
  }
  return gauss_jordan(f, rows, points[0].dim()).size();
}

std::optional<AffineFlat> solve_affine(const FieldSpec& f, std::size_t n,
                                       std::span<const Vector> augmented) {
  std::vector<Vector> rows(augmented.begin(), augmented.end());
  auto pivots = gauss_jordan(f, rows, n + 1);
  Vector particular(n);
  std::vector<Vector> coeff;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == n) return std::nullopt;  // 0 = nonzero
    particular.set(pivots[i], rows[i][n]);
    Vector a(n);
    for (std::size_t c = 0; c < n; ++c) a.set(c, rows[i][c]);
    coeff.push_back(a);
  }
  RrefBasis system = rref(f, n, coeff);
  return AffineFlat(f, LinearSubspace(null_space(f, system)), particular);
}

PointCodec::PointCodec(const FieldSpec& f, std::size_t n)
    : p_(f.p()), n_(n), size_(1) {
  for (std::size_t i = 0; i < n; ++i) {
    if (size_ > (std::uint64_t{1} << 62) / p_)
      throw DomainError("p^n too large to index points");
    size_ *= p_;
  }
}

std::uint64_t PointCodec::encode(const Vector& v) const {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n_; ++i) code = code * p_ + v[i];
  return code;
}

Vector PointCodec::decode(std::uint64_t code) const {
  Vector v(n_);
  for (std::size_t i = n_; i-- > 0;) {
    v.set(i, static_cast<std::uint32_t>(code % p_));
    code /= p_;
  }
  return v;
}

std::size_t hash_value(const Vector& v) {
  std::size_t h = v.dim();
  for (std::size_t i = 0; i < v.dim(); ++i) h = mix(h, v[i]);
  return h;
}

std::size_t hash_value(const LinearSubspace& s) {
  std::size_t h = mix(s.ambient(), s.dim());
  for (const auto& r : s.basis().rows) h = mix(h, hash_value(r));
  return h;
}

std::size_t hash_value(const AffineFlat& a) {
  return mix(hash_value(a.direction()), hash_value(a.representative()));
}

}  // namespace kplab
