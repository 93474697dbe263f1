#include "kplab/maximal.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "kplab/errors.hpp"
#include "kplab/exponents.hpp"
#include "kplab/flats.hpp"
#include "kplab/parallel.hpp"

namespace kplab {

GridFunction::GridFunction(const FieldSpec& f, std::size_t n)
    : field_(f), codec_(f, n), values_(codec_.size(), 0) {}

GridFunction GridFunction::constant(const FieldSpec& f, std::size_t n,
                                    const mpq_class& value) {
  if (value < 0) throw DomainError("grid function values must be >= 0");
  GridFunction g(f, n);
  std::fill(g.values_.begin(), g.values_.end(), value);
  return g;
}

GridFunction GridFunction::indicator(const FieldSpec& f, std::size_t n,
                                     const std::vector<Vector>& support) {
  GridFunction g(f, n);
  for (const auto& v : support) g.set(v, 1);
  return g;
}

void GridFunction::set(const Vector& x, const mpq_class& value) {
  if (value < 0) throw DomainError("grid function values must be >= 0");
  mpq_class& slot = values_[codec_.encode(x)];
  slot = value;
  slot.canonicalize();
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const mpq_class& v) { return v == 0; });
}

GridFunction GridFunction::scaled(const mpq_class& c) const {
  if (c < 0) throw DomainError("scale must be >= 0");
  GridFunction g = *this;
  for (auto& v : g.values_) v *= c;
  return g;
}

GridFunction GridFunction::plus(const GridFunction& o) const {
  if (o.field_.p() != field_.p() || o.n() != n())
    throw DomainError("grid functions live on different spaces");
  GridFunction g = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) g.values_[i] += o.values_[i];
  return g;
}

mpq_class GridFunction::sum() const {
  mpq_class s = 0;
  for (const auto& v : values_) s += v;
  return s;
}

std::optional<mpq_class> GrassmannFunction::at(const LinearSubspace& w) const {
  for (std::size_t i = 0; i < directions.size(); ++i)
    if (directions[i] == w) return values[i];
  return std::nullopt;
}

namespace {

struct Support {
  std::vector<Vector> points;
  std::vector<mpz_class> weights;  // value * denominator
  mpz_class denominator = 1;
  bool small = false;              // every coset sum fits in 64 bits
  std::vector<std::uint64_t> small_weights;
};

Support support_of(const GridFunction& f) {
  Support s;
  for (std::uint64_t code = 0; code < f.codec().size(); ++code) {
    const mpq_class& v = f.at_code(code);
    if (v == 0) continue;
    mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(),
            v.get_den_mpz_t());
    s.points.push_back(f.codec().decode(code));
  }
  mpz_class total = 0;
  for (const auto& x : s.points) {
    const mpq_class scaled = f.at(x) * s.denominator;
    s.weights.push_back(scaled.get_num());
    total += scaled.get_num();
  }
  s.small = total.fits_ulong_p();
  if (s.small)
    for (const auto& w : s.weights) s.small_weights.push_back(w.get_ui());
  return s;
}

}  // namespace

GrassmannFunction apply_maximal(const GridFunction& f, std::size_t k,
                                unsigned threads) {
  const auto& field = f.field();
  GrassmannFunction g;
  g.n = f.n();
  g.k = k;
  g.p = field.p();
  g.directions = grassmannian(f.n(), k, field);
  g.values.assign(g.directions.size(), 0);
  const Support s = support_of(f);
  const PointCodec& codec = f.codec();

  parallel_chunks(g.directions.size(), threads,
                  [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t d = b; d < e; ++d) {
      const RrefBasis& basis = g.directions[d].basis();
      if (s.small) {
        std::unordered_map<std::uint64_t, std::uint64_t> sums;
        std::uint64_t best = 0;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
          auto& slot = sums[codec.encode(reduce(field, basis, s.points[i]))];
          slot += s.small_weights[i];
          best = std::max(best, slot);
        }
        g.values[d] = mpq_class(mpz_class(static_cast<unsigned long>(best)),
                                s.denominator);
      } else {
        std::unordered_map<std::uint64_t, mpz_class> sums;
        mpz_class best = 0;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
          auto& slot = sums[codec.encode(reduce(field, basis, s.points[i]))];
          slot += s.weights[i];
          if (slot > best) best = slot;
        }
        g.values[d] = mpq_class(best, s.denominator);
      }
      g.values[d].canonicalize();
    }
  });
  return g;
}

mpq_class maximal_at_by_points(const GridFunction& f, const LinearSubspace& w) {
  mpq_class best = 0;
  for (std::uint64_t code = 0; code < f.codec().size(); ++code) {
    AffineFlat coset(f.field(), w, f.codec().decode(code));
    mpq_class sum = 0;
    auto pts = enumerate_points(f.field(), coset);
    while (auto y = pts.next()) sum += f.at(*y);
    if (sum > best) best = sum;
  }
  return best;
}

LebesgueExponent LebesgueExponent::of(const mpq_class& v) {
  if (v < 1) throw DomainError("Lebesgue exponent must be >= 1");
  return {false, v};
}

LebesgueExponent LebesgueExponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return inf();
  return of(parse_rational(text));
}

std::string LebesgueExponent::str() const {
  return infinite ? "inf" : value.get_str();
}

namespace {

Real real_of(const mpq_class& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

// (weight * sum_v count_v v^e)^{1/e} over a histogram of values.
Norm power_mean(const std::map<mpq_class, std::uint64_t>& hist,
                const Magnitude& weight, const LebesgueExponent& e) {
  Norm out;
  if (hist.empty()) {
    out.exact = Magnitude::zero();
    out.approx = 0;
    return out;
  }
  if (e.infinite) {
    out.exact = Magnitude::of(hist.rbegin()->first);
    out.approx = out.exact->value();
    return out;
  }
  const mpq_class inv = 1 / e.value;
  if (hist.size() == 1) {
    const auto& [v, cnt] = *hist.begin();
    out.exact = (Magnitude::of(mpz_class(static_cast<unsigned long>(cnt))) * weight)
                    .pow(inv) * Magnitude::of(v);
  } else if (e.value.get_den() == 1 && e.value.get_num().fits_ulong_p()) {
    const unsigned long ee = e.value.get_num().get_ui();
    mpq_class sum = 0;
    for (const auto& [v, cnt] : hist) {
      mpq_class term(pow_mpz(v.get_num(), ee), pow_mpz(v.get_den(), ee));
      sum += term * mpz_class(static_cast<unsigned long>(cnt));
    }
    out.exact = (Magnitude::of(sum) * weight).pow(inv);
  }
  if (out.exact) {
    out.approx = out.exact->value();
    return out;
  }
  const Real re = real_of(e.value);
  Real sum = 0;
  for (const auto& [v, cnt] : hist)
    sum += Real(static_cast<unsigned long long>(cnt)) *
           boost::multiprecision::pow(real_of(v), re);
  out.approx = boost::multiprecision::pow(sum * weight.value(), 1 / re);
  return out;
}

}  // namespace

Norm lp_norm(const GridFunction& f, const LebesgueExponent& p) {
  std::map<mpq_class, std::uint64_t> hist;
  for (std::uint64_t code = 0; code < f.codec().size(); ++code)
    if (f.at_code(code) != 0) ++hist[f.at_code(code)];
  return power_mean(hist, Magnitude(), p);
}

Norm lq_norm_grassmann(const GrassmannFunction& g, const LebesgueExponent& q) {
  std::map<mpq_class, std::uint64_t> hist;
  for (const auto& v : g.values)
    if (v != 0) ++hist[v];
  const long kk = static_cast<long>(g.k * (g.n - g.k));
  return power_mean(hist, Magnitude::power(mpz_class(g.p), mpq_class(-kk)), q);
}

mpq_class nu_total(std::size_t n, std::size_t k, const FieldSpec& f) {
  mpq_class out(gaussian_binomial(static_cast<long>(n), static_cast<long>(k), f.p()),
                pow_mpz(mpz_class(f.p()), k * (n - k)));
  out.canonicalize();
  return out;
}

OperatorRatio operator_ratio(const GridFunction& f, const LebesgueExponent& p,
                             const LebesgueExponent& q, std::size_t k,
                             unsigned threads) {
  if (f.is_zero()) throw DomainError("operator_ratio: f is identically zero");
  OperatorRatio r;
  r.numerator = lq_norm_grassmann(apply_maximal(f, k, threads), q);
  r.denominator = lp_norm(f, p);
  if (r.numerator.exact && r.denominator.exact)
    r.ratio.exact = *r.numerator.exact / *r.denominator.exact;
  r.ratio.approx = r.ratio.exact ? r.ratio.exact->value()
                                 : r.numerator.value() / r.denominator.value();
  return r;
}

SearchResult empirical_norm_search(std::size_t n, std::size_t k,
                                   const FieldSpec& f, const LebesgueExponent& p,
                                   const LebesgueExponent& q,
                                   const std::vector<Candidate>& candidates,
                                   std::uint64_t seed, unsigned threads) {
  if (candidates.empty()) throw DomainError("empty candidate list");
  SearchResult out;
  auto consider = [&](const std::string& name, const GridFunction& g) {
    if (g.is_zero()) return;
    Real ratio = operator_ratio(g, p, q, k, threads).ratio.value();
    out.tried.emplace_back(name, ratio);
    if (!out.witness || ratio > out.best_ratio) {
      out.best_ratio = ratio;
      out.best_name = name;
      out.witness = g;
    }
  };
  for (Candidate cand : candidates) {
    switch (cand) {
      case Candidate::constant:
        consider("constant", GridFunction::constant(f, n, 1));
        break;
      case Candidate::point:
        consider("point", GridFunction::indicator(f, n, {Vector(n)}));
        break;
      case Candidate::flats:
        for (std::size_t r = 0; r <= k; ++r) {
          auto w = enumerate_grassmannian(n, r, f).next();
          consider("flat-" + std::to_string(r),
                   GridFunction::indicator(f, n, flat_points(f, AffineFlat(f, *w, Vector(n)))));
        }
        break;
      case Candidate::random: {
        const std::uint64_t size = PointCodec(f, n).size();
        for (int j = 1; (std::uint64_t{1} << j) <= size; ++j) {
          mpq_class density(1, mpz_class(1) << j);
          auto pts = gen_point_cloud(n, f, density, derive_seed(seed, j));
          consider("random-1/" + std::to_string(1u << j),
                   GridFunction::indicator(f, n, pts));
        }
        break;
      }
      case Candidate::degenerate:
        for (std::size_t r = 1; r < k; ++r) {
          Configuration c = gen_degenerate(n, k, r, f);
          PointSet u(f, n);
          for (const auto& fl : c.flats())
            for (const auto& v : flat_points(f, fl)) u.insert(v);
          consider("degenerate-" + std::to_string(r),
                   GridFunction::indicator(f, n, u.points()));
        }
        break;
    }
  }
  if (!out.witness)
    consider("constant", GridFunction::constant(f, n, 1));
  return out;
}

std::string serialize(const GridFunction& g) {
  nlohmann::json doc;
  doc["p"] = g.field().p();
  doc["n"] = g.n();
  doc["values"] = nlohmann::json::array();
  for (std::uint64_t code = 0; code < g.codec().size(); ++code) {
    if (g.at_code(code) == 0) continue;
    Vector v = g.codec().decode(code);
    nlohmann::json pt = nlohmann::json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) pt.push_back(v[i]);
    doc["values"].push_back({{"point", pt}, {"value", g.at_code(code).get_str()}});
  }
  return doc.dump();
}

GridFunction deserialize_grid_function(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  FieldSpec f(doc.at("p").get<std::uint32_t>());
  const auto n = doc.at("n").get<std::size_t>();
  GridFunction g(f, n);
  for (const auto& e : doc.at("values")) {
    Vector v(n);
    const auto& pt = e.at("point");
    if (pt.size() != n) throw DomainError("point has wrong dimension");
    for (std::size_t i = 0; i < n; ++i)
      v.set(i, f.reduce(pt[i].get<std::int64_t>()));
    g.set(v, parse_rational(e.at("value").get<std::string>()));
  }
  return g;
}

}  // namespace kplab
