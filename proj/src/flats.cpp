#include "kplab/flats.hpp"

#include <algorithm>
#include <unordered_set>

#include "kplab/errors.hpp"

namespace kplab {

mpz_class gaussian_binomial(long n, long k, std::uint32_t p) {
  if (k < 0 || n < 0 || k > n)
    throw DomainError("gaussian_binomial requires 0 <= k <= n");
  mpz_class num = 1, den = 1, q = p;
  for (long i = 0; i < k; ++i) {
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n - i));
    mpz_pow_ui(b.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k - i));
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

std::vector<std::vector<std::uint8_t>> pivot_patterns(std::size_t n,
                                                      std::size_t k) {
  std::vector<std::vector<std::uint8_t>> out;
  if (k > n) return out;
  std::vector<std::uint8_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<std::uint8_t>(i);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

GrassmannianStream::GrassmannianStream(const FieldSpec& f, std::size_t n,
                                       std::size_t k)
    : field_(f), n_(n), k_(k), patterns_(pivot_patterns(n, k)) {
  if (n > kMaxDim) throw DomainError("ambient dimension above kMaxDim");
  if (k > n) throw DomainError("Grassmannian requires k <= n");
  pattern_end_ = patterns_.size();
  if (pattern_ < pattern_end_) load_pattern();
}

GrassmannianStream::GrassmannianStream(const FieldSpec& f, std::size_t n,
                                       std::size_t k, std::size_t index)
    : GrassmannianStream(f, n, k) {
  if (index >= patterns_.size())
    throw DomainError("pivot pattern index out of range");
  pattern_ = index;
  pattern_end_ = index + 1;
  load_pattern();
}

void GrassmannianStream::load_pattern() {
  const auto& piv = patterns_[pattern_];
  free_.clear();
  for (std::size_t r = 0; r < k_; ++r)
    for (std::size_t c = piv[r] + 1; c < n_; ++c)
      if (!std::binary_search(piv.begin(), piv.end(), c))
        free_.emplace_back(static_cast<std::uint8_t>(r),
                           static_cast<std::uint8_t>(c));
  values_.assign(free_.size(), 0);
  fresh_pattern_ = true;
}

std::optional<LinearSubspace> GrassmannianStream::next() {
  while (pattern_ < pattern_end_) {
    if (!fresh_pattern_) {
      // Odometer step; last free entry moves fastest.
      std::size_t i = values_.size();
      while (i > 0) {
        if (++values_[i - 1] < field_.p()) break;
        values_[i - 1] = 0;
        --i;
      }
      if (i == 0) {
        if (++pattern_ >= pattern_end_) return std::nullopt;
        load_pattern();
      }
    }
    fresh_pattern_ = false;
    const auto& piv = patterns_[pattern_];
    RrefBasis b;
    b.ambient = n_;
    b.pivots = piv;
    b.rows.assign(k_, Vector(n_));
    for (std::size_t r = 0; r < k_; ++r) b.rows[r].set(piv[r], 1);
    for (std::size_t i = 0; i < free_.size(); ++i)
      b.rows[free_[i].first].set(free_[i].second, values_[i]);
    return LinearSubspace(std::move(b));
  }
  return std::nullopt;
}

GrassmannianStream enumerate_grassmannian(std::size_t n, std::size_t k,
                                          const FieldSpec& f) {
  return GrassmannianStream(f, n, k);
}

std::vector<LinearSubspace> grassmannian(std::size_t n, std::size_t k,
                                         const FieldSpec& f) {
  std::vector<LinearSubspace> out;
  auto s = enumerate_grassmannian(n, k, f);
  while (auto w = s.next()) out.push_back(std::move(*w));
  return out;
}

FlatPointStream::FlatPointStream(const FieldSpec& f, const AffineFlat& flat)
    : field_(f), flat_(flat), coeff_(flat.dim(), 0) {}

std::optional<Vector> FlatPointStream::next() {
  if (done_) return std::nullopt;
  const auto& rows = flat_.direction().basis().rows;
  Vector v = flat_.representative();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (coeff_[i] != 0) v = vec_axpy(field_, v, coeff_[i], rows[i]);
  std::size_t i = coeff_.size();
  while (i > 0) {
    if (++coeff_[i - 1] < field_.p()) break;
    coeff_[i - 1] = 0;
    --i;
  }
  if (i == 0) done_ = true;
  return v;
}

FlatPointStream enumerate_points(const FieldSpec& f, const AffineFlat& flat) {
  return FlatPointStream(f, flat);
}

std::vector<Vector> flat_points(const FieldSpec& f, const AffineFlat& flat) {
  std::vector<Vector> out;
  auto s = enumerate_points(f, flat);
  while (auto v = s.next()) out.push_back(*v);
  return out;
}

std::optional<AffineFlat> intersect_flats(const FieldSpec& f,
                                          std::span<const AffineFlat> flats) {
  if (flats.empty()) throw DomainError("intersection of no flats");
  if (flats.size() == 1) return flats[0];
  const std::size_t n = flats[0].ambient();
  // Each flat x + W is {y : h.y = h.x for h in W^perp}.
  std::vector<Vector> eqs;
  for (const auto& fl : flats) {
    if (fl.ambient() != n) throw DomainError("intersect_flats: mixed ambient");
    RrefBasis perp = null_space(f, fl.direction().basis());
    for (const auto& h : perp.rows) {
      Vector row(n + 1);
      for (std::size_t c = 0; c < n; ++c) row.set(c, h[c]);
      row.set(n, dot(f, h, fl.representative()));
      eqs.push_back(row);
    }
  }
  return solve_affine(f, n, eqs);
}

AffineFlat join_flats(const FieldSpec& f, const AffineFlat& a,
                      const AffineFlat& b) {
  std::vector<Vector> gens(a.direction().basis().rows);
  for (const auto& r : b.direction().basis().rows) gens.push_back(r);
  gens.push_back(vec_sub(f, b.representative(), a.representative()));
  return AffineFlat(f, LinearSubspace::span(f, a.ambient(), gens),
                    a.representative());
}

bool is_direction_separated(std::span<const AffineFlat> family) {
  std::unordered_set<LinearSubspace> seen;
  seen.reserve(family.size());
  for (const auto& fl : family)
    if (!seen.insert(fl.direction()).second) return false;
  return true;
}

std::vector<AffineFlat> cosets(const FieldSpec& f, const LinearSubspace& w) {
  const std::size_t n = w.ambient();
  std::vector<std::uint8_t> free_cols;
  {
    std::size_t j = 0;
    const auto& piv = w.basis().pivots;
    for (std::size_t c = 0; c < n; ++c) {
      if (j < piv.size() && piv[j] == c) {
        ++j;
        continue;
      }
      free_cols.push_back(static_cast<std::uint8_t>(c));
    }
  }
  std::vector<AffineFlat> out;
  std::vector<std::uint32_t> vals(free_cols.size(), 0);
  while (true) {
    Vector rep(n);
    for (std::size_t i = 0; i < free_cols.size(); ++i)
      rep.set(free_cols[i], vals[i]);
    out.emplace_back(f, w, rep);
    std::size_t i = vals.size();
    while (i > 0) {
      if (++vals[i - 1] < f.p()) break;
      vals[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace kplab
