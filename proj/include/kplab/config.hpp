#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kplab/flats.hpp"
#include "kplab/linalg.hpp"

namespace kplab {

/// Deterministic 64-bit generator. Only the raw mt19937_64 stream is used
/// (never std distributions), so output is identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability num/den.
  bool bernoulli(const mpq_class& probability);

 private:
  std::mt19937_64 engine_;
};

/// Independent substream seed for a named purpose.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Set of points of F^n with O(1) membership.
class PointSet {
 public:
  PointSet(const FieldSpec& f, std::size_t n);
  PointSet(const FieldSpec& f, std::size_t n, std::vector<Vector> points);

  bool insert(const Vector& v);
  bool contains(const Vector& v) const { return bits_[codec_.encode(v)] != 0; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  /// Sorted ascending.
  const std::vector<Vector>& points() const;
  std::uint64_t index_of(const Vector& v) const { return codec_.encode(v); }
  const PointCodec& codec() const { return codec_; }

 private:
  PointCodec codec_;
  std::vector<std::uint8_t> bits_;
  mutable std::vector<Vector> points_;
  mutable bool sorted_ = true;
};

/// Points P in F^n together with a family of k-flats.
class Configuration {
 public:
  Configuration(const FieldSpec& f, std::size_t n, std::size_t k,
                std::vector<Vector> points, std::vector<AffineFlat> flats);

  const FieldSpec& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const PointSet& points() const { return points_; }
  const std::vector<AffineFlat>& flats() const { return flats_; }
  bool direction_separated() const { return direction_separated_; }

  /// Same points, different flats (used for refinements).
  Configuration with_flats(std::vector<AffineFlat> flats) const;
  Configuration with_points(std::vector<Vector> points) const;

 private:
  FieldSpec field_;
  std::size_t n_, k_;
  PointSet points_;
  std::vector<AffineFlat> flats_;
  bool direction_separated_;
};

/// Type-(k,r) degenerate configuration: P = all points of the coordinate
/// r-flat sigma = span(e_0..e_{r-1}); Pi = every k-subspace containing
/// sigma, one flat per direction. |Pi| = gaussian_binomial(n-r, k-r, p).
Configuration gen_degenerate(std::size_t n, std::size_t k, std::size_t r,
                             const FieldSpec& f);

struct TranslateRule {
  enum class Kind { zero, random } kind = Kind::zero;
  std::uint64_t seed = 0;
};

/// Union of one translate of every k-subspace.
PointSet gen_nk_set(std::size_t n, std::size_t k, const FieldSpec& f,
                    TranslateRule rule);

/// True iff every direction in G(n,k) has a translate inside `set`.
bool has_flat_in_every_direction(const PointSet& set, std::size_t k,
                                 const FieldSpec& f);

/// Uniform random coset of w, drawn by filling the non-pivot coordinates.
AffineFlat random_translate(const FieldSpec& f, const LinearSubspace& w,
                            Rng& rng);

/// `num_directions` distinct directions sampled without replacement
/// (partial Fisher-Yates over the enumeration order), one random translate
/// each; P empty.
Configuration gen_random_direction_separated(std::size_t n, std::size_t k,
                                             std::size_t num_directions,
                                             const FieldSpec& f,
                                             std::uint64_t seed);

/// Each point of F^n kept independently with probability `density`.
std::vector<Vector> gen_point_cloud(std::size_t n, const FieldSpec& f,
                                    const mpq_class& density,
                                    std::uint64_t seed);

/// Corpus member used by the property and acceptance suites: a random
/// direction-separated family (1..|G(n,k)| directions) over a point cloud
/// whose density is drawn from {1/16, 1/8, 1/4, 1/2, 3/4, 1}.
Configuration gen_corpus_config(std::size_t n, std::size_t k,
                                const FieldSpec& f, std::uint64_t seed);

/// Small configuration rich in simplices: at most `max_points` random
/// points, and each k-dimensional hull of k+1 of them kept with
/// probability 1/2. Not direction separated in general.
Configuration gen_hull_family(std::size_t n, std::size_t k,
                              const FieldSpec& f, std::size_t max_points,
                              std::uint64_t seed);

/// JSON document {"p","n","k","points","flats":[{"basis","rep"}]}.
std::string serialize(const Configuration& c);
Configuration deserialize_configuration(const std::string& text);

}  // namespace kplab
