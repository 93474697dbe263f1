#include "kplab/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "kplab/errors.hpp"
#include "kplab/parallel.hpp"

namespace kplab {

namespace {

using FlatIds = std::unordered_map<AffineFlat, std::uint32_t>;

FlatIds index_flats(const Configuration& c) {
  FlatIds ids;
  for (std::size_t j = 0; j < c.flats().size(); ++j)
    ids.emplace(c.flats()[j], static_cast<std::uint32_t>(j));
  return ids;
}

std::vector<std::uint32_t> intersect_sorted(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Advances `comb` (strictly increasing indices below n) to the next
// combination; false when exhausted.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t m = comb.size();
  for (std::size_t i = m; i-- > 0;) {
    if (comb[i] + (m - i) < n) {
      ++comb[i];
      for (std::size_t j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double binomial_d(std::uint64_t n, std::size_t r) {
  if (r > n) return 0;
  double out = 1;
  for (std::size_t i = 0; i < r; ++i) out = out * double(n - i) / double(i + 1);
  return out;
}

struct VertexSet {
  std::vector<std::uint32_t> vertices;  // S (on the base flat) then the apex
  std::vector<std::optional<std::uint32_t>> facets;  // facet i omits vertex i
  int present = 0;
};

// Every vertex set S + {a} with S a spanning (k+1)-subset of flat j and at
// least one more facet in the family, reported once: from the present facet
// with the smallest id.
template <typename Visit>
void scan_flat(const Configuration& c, const IncidenceIndex& idx,
               const FlatIds& ids, std::uint32_t j, std::uint64_t& scanned,
               Visit&& visit) {
  const auto& f = c.field();
  const std::size_t k = c.k();
  const auto& pts = c.points().points();
  const auto& on = idx.flat_points[j];
  if (on.size() < k + 1) return;
  std::vector<std::size_t> comb(k + 1);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<Vector> buf(k + 1);
  do {
    ++scanned;
    for (std::size_t i = 0; i <= k; ++i) buf[i] = pts[on[comb[i]]];
    if (affine_rank(f, buf) != k) continue;
    std::vector<std::uint32_t> apexes;
    for (std::size_t skip = 0; skip <= k; ++skip) {
      std::vector<std::uint32_t> through;
      bool first = true;
      for (std::size_t i = 0; i <= k; ++i) {
        if (i == skip) continue;
        const auto& lst = idx.point_flats[on[comb[i]]];
        through = first ? lst : intersect_sorted(through, lst);
        first = false;
      }
      for (auto g : through) {
        if (g == j) continue;
        for (auto a : idx.flat_points[g])
          if (!std::binary_search(on.begin(), on.end(), a)) apexes.push_back(a);
      }
    }
    std::sort(apexes.begin(), apexes.end());
    apexes.erase(std::unique(apexes.begin(), apexes.end()), apexes.end());
    for (auto a : apexes) {
      VertexSet vs;
      vs.vertices.reserve(k + 2);
      for (std::size_t i = 0; i <= k; ++i) vs.vertices.push_back(on[comb[i]]);
      vs.vertices.push_back(a);
      vs.facets.assign(k + 2, std::nullopt);
      vs.facets[k + 1] = j;
      vs.present = 1;
      bool lowest = true;
      for (std::size_t skip = 0; skip <= k && lowest; ++skip) {
        std::vector<Vector> facet;
        for (std::size_t i = 0; i < k + 2; ++i)
          if (i != skip) facet.push_back(pts[vs.vertices[i]]);
        auto it = ids.find(affine_hull(f, facet).flat);
        if (it == ids.end()) continue;
        if (it->second < j) lowest = false;
        vs.facets[skip] = it->second;
        ++vs.present;
      }
      if (lowest) visit(vs);
    }
  } while (next_combination(comb, on.size()));
}

}  // namespace

double simplex_work_estimate(const Configuration& c, const IncidenceIndex& idx) {
  double work = 0;
  for (auto cnt : idx.flat_counts) work += binomial_d(cnt, c.k() + 1);
  return work;
}

FacetProfile facet_profile(const Configuration& c, const IncidenceIndex& idx,
                           const SimplexOptions& opts) {
  const std::size_t k = c.k();
  if (k < 1 || k + 1 > c.n())
    throw DomainError("simplex counting requires 1 <= k <= n-1");
  const double work = simplex_work_estimate(c, idx);
  if (work > opts.budget)
    throw BudgetError("simplex scan exceeds the work budget", work);
  const FlatIds ids = index_flats(c);
  const unsigned workers = effective_threads(c.flats().size(), opts.threads);
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(k + 3, 0));
  std::vector<std::uint64_t> scanned(workers, 0);
  parallel_chunks(c.flats().size(), opts.threads,
                  [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t j = b; j < e; ++j)
      scan_flat(c, idx, ids, static_cast<std::uint32_t>(j), scanned[w],
                [&](const VertexSet& vs) { ++partial[w][vs.present]; });
  });
  FacetProfile out;
  out.by_facets.assign(k + 3, 0);
  for (unsigned w = 0; w < workers; ++w) {
    out.subsets_scanned += scanned[w];
    for (std::size_t i = 0; i < k + 3; ++i)
      out.by_facets[i] += mpz_class(static_cast<unsigned long>(partial[w][i]));
  }
  return out;
}

mpz_class count_simplices(const Configuration& c, const SimplexOptions& opts) {
  if (c.points().size() < c.k() + 2 || c.flats().empty()) {
    if (c.k() < 1 || c.k() + 1 > c.n())
      throw DomainError("simplex counting requires 1 <= k <= n-1");
    return 0;
  }
  IncidenceIndex idx = incidence_count(c, opts.threads);
  return facet_profile(c, idx, opts).by_facets[c.k() + 2];
}

mpz_class ordered_simplices(const mpz_class& unordered, std::size_t k) {
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), k + 2);
  return unordered * fact;
}

mpz_class count_simplices_bruteforce(const Configuration& c) {
  const std::size_t k = c.k();
  const auto& f = c.field();
  const auto& pts = c.points().points();
  if (pts.size() > 40)
    throw BudgetError("brute-force simplex count limited to |P| <= 40",
                      binomial_d(pts.size(), k + 2));
  mpz_class total = 0;
  if (pts.size() < k + 2) return total;
  std::vector<std::size_t> comb(k + 2);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<Vector> verts(k + 2);
  do {
    for (std::size_t i = 0; i < k + 2; ++i) verts[i] = pts[comb[i]];
    if (affine_rank(f, verts) != k + 1) continue;
    bool all = true;
    for (std::size_t skip = 0; skip < k + 2 && all; ++skip) {
      bool found = false;
      for (const auto& fl : c.flats()) {
        bool contains = true;
        for (std::size_t i = 0; i < k + 2 && contains; ++i)
          if (i != skip) contains = membership(f, verts[i], fl);
        if (contains) {
          found = true;
          break;
        }
      }
      all = found;
    }
    if (all) ++total;
  } while (next_combination(comb, pts.size()));
  return total;
}

std::vector<Simplex> enumerate_simplices(const Configuration& c,
                                         std::size_t limit) {
  std::vector<Simplex> out;
  IncidenceIndex idx = incidence_count(c, 1);
  const FlatIds ids = index_flats(c);
  const auto& pts = c.points().points();
  std::uint64_t scanned = 0;
  for (std::size_t j = 0; j < c.flats().size() && out.size() < limit; ++j)
    scan_flat(c, idx, ids, static_cast<std::uint32_t>(j), scanned,
              [&](const VertexSet& vs) {
      if (vs.present != static_cast<int>(c.k()) + 2 || out.size() >= limit)
        return;
      Simplex s;
      for (auto v : vs.vertices) s.vertices.push_back(pts[v]);
      for (const auto& fid : vs.facets) s.faces.push_back(c.flats()[*fid]);
      out.push_back(std::move(s));
    });
  return out;
}

mpz_class count_chains(const Configuration& c, int l, const SimplexOptions& opts) {
  const long k = static_cast<long>(c.k());
  if (l < 2 || l > k + 1)
    throw DomainError("count_chains requires 2 <= l <= k+1");
  if (c.points().size() < c.k() + 2 || c.flats().size() < 2) return 0;
  IncidenceIndex idx = incidence_count(c, opts.threads);
  FacetProfile prof = facet_profile(c, idx, opts);
  mpz_class sum = 0;
  for (long f = l; f <= k + 2; ++f) {
    mpz_class falling = 1;
    for (long i = 0; i < l; ++i) falling *= f - i;
    sum += prof.by_facets[f] * falling;
  }
  return ordered_simplices(sum, c.k());
}

mpz_class v_k_del(const RefinementChainReport& chain) { return chain.vk_del; }

LambdaReport lambda_counts(const Configuration& refined,
                           const RefinementChainReport& chain, double budget) {
  LambdaReport out;
  double pairs = 0;
  for (const auto& sp : chain.spines)
    if (sp.qualifies && sp.flats.size() >= 2)
      pairs += double(sp.flats.size()) * double(sp.flats.size() - 1) / 2;
  if (pairs * double(refined.flats().size()) > budget) return out;
  const auto& f = refined.field();
  for (const auto& sp : chain.spines) {
    if (!sp.qualifies) continue;
    for (std::size_t a = 0; a < sp.flats.size(); ++a)
      for (std::size_t b = a + 1; b < sp.flats.size(); ++b) {
        AffineFlat lambda = join_flats(f, refined.flats()[sp.flats[a]],
                                       refined.flats()[sp.flats[b]]);
        std::uint64_t inside = 0;
        for (const auto& fl : refined.flats()) {
          bool sub = membership(f, fl.representative(), lambda);
          for (const auto& row : fl.direction().basis().rows)
            if (sub) sub = lambda.direction().contains(f, row);
          if (sub) ++inside;
        }
        out.max_flats = std::max(out.max_flats, inside);
        ++out.pairs_examined;
      }
  }
  out.computed = true;
  return out;
}

SimplexBoundReport simplex_bound_report(const Configuration& c,
                                        const SimplexOptions& opts) {
  const long k = static_cast<long>(c.k());
  SimplexBoundReport r;
  IncidenceIndex idx = incidence_count(c, opts.threads);
  r.points = c.points().size();
  r.flats = c.flats().size();
  r.incidences = idx.total;
  if (idx.total == 0) return r;

  RefinedConfig ref = refine_dyadic(c, idx);
  r.refined_flats = ref.refined.flats().size();
  r.refined_incidences = ref.refined_total;
  r.simplices = count_simplices(ref.refined, opts);
  r.simplices_ordered = ordered_simplices(r.simplices, c.k());
  r.simplices_full = ref.refined.flats().size() == c.flats().size()
                         ? r.simplices
                         : count_simplices(c, opts);

  ChainOptions copts;
  copts.threads = opts.threads;
  RefinementChainReport chain = build_refinement_chain(ref, copts);
  r.vk = chain.vk;
  r.vk_del = v_k_del(chain);
  r.lambda = lambda_counts(ref.refined, chain);

  auto mz = [](std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); };
  const mpz_class P = mz(r.points), Pi = mz(r.flats), I = mz(r.incidences);
  const mpz_class Pt = mz(r.refined_flats), It = mz(r.refined_incidences);
  const mpz_class F(c.field().p());
  const Magnitude S = Magnitude::of(r.simplices);

  r.upper = Magnitude::of(r.vk) * (Magnitude::of(mpz_class(Pt * F)) / Magnitude::of(It)).pow(k) *
            Magnitude::power(F, k * k);
  r.lower = Magnitude::of(r.vk).pow(k + 1) * Magnitude::power(Pt, k * k - 2 * k - 2) /
            (Magnitude::power(P, k) * Magnitude::power(It, k * k - k - 2));
  const Magnitude Sfull = Magnitude::of(r.simplices_full);
  r.heuristic = Magnitude::power(P, k + 2) * Magnitude::power(Pi, k + 2) *
                (Magnitude::of(I) / Magnitude::of(mpz_class(P * Pi))).pow((k + 1) * (k + 2));

  if (!r.upper->is_zero()) r.upper_ratio = S / *r.upper;
  r.upper_holds = S <= *r.upper;
  if (r.simplices != 0 && !r.lower->is_zero()) r.lower_ratio = S / *r.lower;
  if (r.simplices_full != 0) r.heuristic_ratio = Sfull / *r.heuristic;
  return r;
}

}  // namespace kplab
