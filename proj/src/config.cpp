#include "kplab/config.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

#include "kplab/errors.hpp"

namespace kplab {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % bound;
}

bool Rng::bernoulli(const mpq_class& probability) {
  if (probability <= 0) return false;
  if (probability >= 1) return true;
  if (!probability.get_den().fits_ulong_p())
    throw DomainError("probability denominator too large");
  return below(probability.get_den().get_ui()) < probability.get_num().get_ui();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 finaliser over seed ^ rotated tag
  std::uint64_t z = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PointSet::PointSet(const FieldSpec& f, std::size_t n)
    : codec_(f, n), bits_(codec_.size(), 0) {}

PointSet::PointSet(const FieldSpec& f, std::size_t n,
                   std::vector<Vector> points)
    : PointSet(f, n) {
  for (const auto& v : points) insert(v);
}

bool PointSet::insert(const Vector& v) {
  auto& b = bits_[codec_.encode(v)];
  if (b) return false;
  b = 1;
  if (!points_.empty() && v < points_.back()) sorted_ = false;
  points_.push_back(v);
  return true;
}

const std::vector<Vector>& PointSet::points() const {
  if (!sorted_) {
    std::sort(points_.begin(), points_.end());
    sorted_ = true;
  }
  return points_;
}

Configuration::Configuration(const FieldSpec& f, std::size_t n, std::size_t k,
                             std::vector<Vector> points,
                             std::vector<AffineFlat> flats)
    : field_(f), n_(n), k_(k), points_(f, n) {
  if (n < 1 || n > kMaxDim) throw DomainError("ambient dimension out of range");
  if (k > n) throw DomainError("flat dimension exceeds ambient dimension");
  for (const auto& v : points) {
    if (v.dim() != n) throw DomainError("point of wrong dimension");
    points_.insert(v);
  }
  std::unordered_set<AffineFlat> seen;
  for (auto& fl : flats) {
    if (fl.ambient() != n || fl.dim() != k)
      throw DomainError("flat of wrong dimension in configuration");
    if (seen.insert(fl).second) flats_.push_back(std::move(fl));
  }
  direction_separated_ = is_direction_separated(flats_);
}

Configuration Configuration::with_flats(std::vector<AffineFlat> flats) const {
  return Configuration(field_, n_, k_, points_.points(), std::move(flats));
}

Configuration Configuration::with_points(std::vector<Vector> points) const {
  return Configuration(field_, n_, k_, std::move(points), flats_);
}

Configuration gen_degenerate(std::size_t n, std::size_t k, std::size_t r,
                             const FieldSpec& f) {
  if (!(1 <= r && r < k && k + 1 <= n))
    throw DomainError("gen_degenerate requires 1 <= r < k <= n-1");
  std::vector<Vector> sigma_dirs;
  for (std::size_t i = 0; i < r; ++i) {
    Vector e(n);
    e.set(i, 1);
    sigma_dirs.push_back(e);
  }
  AffineFlat sigma(f, LinearSubspace::span(f, n, sigma_dirs), Vector(n));

  std::vector<AffineFlat> flats;
  auto quotient = enumerate_grassmannian(n - r, k - r, f);
  while (auto w = quotient.next()) {
    std::vector<Vector> gens = sigma_dirs;
    for (const auto& row : w->basis().rows) {
      Vector lifted(n);
      for (std::size_t c = 0; c < n - r; ++c) lifted.set(r + c, row[c]);
      gens.push_back(lifted);
    }
    flats.emplace_back(f, LinearSubspace::span(f, n, gens), Vector(n));
  }
  return Configuration(f, n, k, flat_points(f, sigma), std::move(flats));
}

AffineFlat random_translate(const FieldSpec& f, const LinearSubspace& w,
                            Rng& rng) {
  const std::size_t n = w.ambient();
  const auto& piv = w.basis().pivots;
  Vector rep(n);
  std::size_t j = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (j < piv.size() && piv[j] == c) {
      ++j;
      continue;
    }
    rep.set(c, static_cast<std::uint32_t>(rng.below(f.p())));
  }
  return AffineFlat(f, w, rep);
}

PointSet gen_nk_set(std::size_t n, std::size_t k, const FieldSpec& f,
                    TranslateRule rule) {
  if (k < 1 || k + 1 > n) throw DomainError("gen_nk_set requires 1 <= k <= n-1");
  PointSet out(f, n);
  Rng rng(derive_seed(rule.seed, 0x6e6b));
  auto g = enumerate_grassmannian(n, k, f);
  while (auto w = g.next()) {
    AffineFlat flat = rule.kind == TranslateRule::Kind::zero
                          ? AffineFlat(f, *w, Vector(n))
                          : random_translate(f, *w, rng);
    auto pts = enumerate_points(f, flat);
    while (auto v = pts.next()) out.insert(*v);
  }
  return out;
}

bool has_flat_in_every_direction(const PointSet& set, std::size_t k,
                                 const FieldSpec& f) {
  const std::size_t n = set.codec().dim();
  auto g = enumerate_grassmannian(n, k, f);
  while (auto w = g.next()) {
    bool found = false;
    for (const auto& coset : cosets(f, *w)) {
      bool inside = true;
      auto pts = enumerate_points(f, coset);
      while (auto v = pts.next())
        if (!set.contains(*v)) {
          inside = false;
          break;
        }
      if (inside) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Configuration gen_random_direction_separated(std::size_t n, std::size_t k,
                                             std::size_t num_directions,
                                             const FieldSpec& f,
                                             std::uint64_t seed) {
  auto dirs = grassmannian(n, k, f);
  if (num_directions > dirs.size())
    throw DomainError("requested " + std::to_string(num_directions) +
                      " directions but G(n,k) has " +
                      std::to_string(dirs.size()));
  Rng rng(derive_seed(seed, 0x6469));
  for (std::size_t i = 0; i < num_directions; ++i) {
    std::size_t j = i + rng.below(dirs.size() - i);
    std::swap(dirs[i], dirs[j]);
  }
  std::vector<AffineFlat> flats;
  flats.reserve(num_directions);
  for (std::size_t i = 0; i < num_directions; ++i)
    flats.push_back(random_translate(f, dirs[i], rng));
  return Configuration(f, n, k, {}, std::move(flats));
}

std::vector<Vector> gen_point_cloud(std::size_t n, const FieldSpec& f,
                                    const mpq_class& density,
                                    std::uint64_t seed) {
  if (density < 0 || density > 1) throw DomainError("density outside [0, 1]");
  PointCodec codec(f, n);
  Rng rng(derive_seed(seed, 0x7074));
  std::vector<Vector> out;
  for (std::uint64_t code = 0; code < codec.size(); ++code)
    if (rng.bernoulli(density)) out.push_back(codec.decode(code));
  return out;
}

Configuration gen_corpus_config(std::size_t n, std::size_t k,
                                const FieldSpec& f, std::uint64_t seed) {
  static const mpq_class kDensities[] = {mpq_class(1, 16), mpq_class(1, 8),
                                         mpq_class(1, 4),  mpq_class(1, 2),
                                         mpq_class(3, 4),  mpq_class(1)};
  Rng rng(derive_seed(seed, 0x636f));
  const std::size_t g = gaussian_binomial(n, k, f.p()).get_ui();
  const std::size_t dirs = 1 + rng.below(g);
  const mpq_class& density = kDensities[rng.below(6)];
  Configuration base = gen_random_direction_separated(n, k, dirs, f, seed);
  return base.with_points(gen_point_cloud(n, f, density, seed));
}

Configuration gen_hull_family(std::size_t n, std::size_t k,
                              const FieldSpec& f, std::size_t max_points,
                              std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x6875));
  PointCodec codec(f, n);
  const std::size_t lo = std::min<std::size_t>(k + 2, max_points);
  std::size_t want = lo + rng.below(max_points - lo + 1);
  want = std::min<std::size_t>(want, codec.size());
  std::vector<Vector> pts;
  std::unordered_set<std::uint64_t> taken;
  while (pts.size() < want) {
    std::uint64_t c = rng.below(codec.size());
    if (taken.insert(c).second) pts.push_back(codec.decode(c));
  }
  std::sort(pts.begin(), pts.end());

  std::vector<AffineFlat> flats;
  std::unordered_set<AffineFlat> seen;
  std::vector<std::size_t> idx(k + 1);
  for (std::size_t i = 0; i <= k; ++i) idx[i] = i;
  std::vector<Vector> subset(k + 1);
  while (pts.size() >= k + 1) {
    for (std::size_t i = 0; i <= k; ++i) subset[i] = pts[idx[i]];
    auto hull = affine_hull(f, subset);
    if (hull.dimension == k && seen.insert(hull.flat).second &&
        rng.bernoulli(mpq_class(1, 2)))
      flats.push_back(hull.flat);
    std::size_t i = k + 1;
    while (i > 0 && idx[i - 1] == pts.size() - (k + 1) + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j <= k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return Configuration(f, n, k, std::move(pts), std::move(flats));
}

namespace {

nlohmann::json vec_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

Vector json_vec(const nlohmann::json& a, std::size_t n, const FieldSpec& f) {
  if (!a.is_array() || a.size() != n)
    throw DomainError("configuration: vector of wrong length");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, f.reduce(a[i].get<std::int64_t>()));
  return v;
}

}  // namespace

std::string serialize(const Configuration& c) {
  nlohmann::json doc;
  doc["p"] = c.field().p();
  doc["n"] = c.n();
  doc["k"] = c.k();
  doc["points"] = nlohmann::json::array();
  for (const auto& v : c.points().points()) doc["points"].push_back(vec_json(v));
  doc["flats"] = nlohmann::json::array();
  for (const auto& fl : c.flats()) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& r : fl.direction().basis().rows) basis.push_back(vec_json(r));
    doc["flats"].push_back(
        {{"basis", basis}, {"rep", vec_json(fl.representative())}});
  }
  return doc.dump(1);
}

Configuration deserialize_configuration(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  FieldSpec f(doc.at("p").get<std::uint32_t>());
  const std::size_t n = doc.at("n").get<std::size_t>();
  const std::size_t k = doc.at("k").get<std::size_t>();
  std::vector<Vector> pts;
  for (const auto& a : doc.at("points")) pts.push_back(json_vec(a, n, f));
  std::vector<AffineFlat> flats;
  for (const auto& fl : doc.at("flats")) {
    std::vector<Vector> gens;
    for (const auto& r : fl.at("basis")) gens.push_back(json_vec(r, n, f));
    flats.emplace_back(f, LinearSubspace::span(f, n, gens),
                       json_vec(fl.at("rep"), n, f));
  }
  return Configuration(f, n, k, std::move(pts), std::move(flats));
}

}  // namespace kplab
