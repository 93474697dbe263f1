#include "kplab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "kplab/errors.hpp"
#include "kplab/lattice.hpp"
#include "kplab/parallel.hpp"

namespace kplab {

namespace {

mpz_class upow(std::uint64_t base, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

mpz_class zpow(const mpz_class& base, unsigned long e) { return pow_mpz(base, e); }

std::uint64_t ipow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

int floor_log2(std::uint64_t v) { return 63 - __builtin_clzll(v); }

}  // namespace

IncidenceIndex incidence_count(const Configuration& c, unsigned threads) {
  const auto& f = c.field();
  const auto& pts = c.points().points();
  const auto& flats = c.flats();
  IncidenceIndex idx;
  idx.flat_counts.assign(flats.size(), 0);
  idx.flat_points.assign(flats.size(), {});
  idx.point_flats.assign(pts.size(), {});

  const PointCodec& codec = c.points().codec();
  std::vector<std::uint32_t> id_of_code;
  const std::uint64_t flat_size = ipow(f.p(), c.k());
  const bool probe = flat_size <= pts.size();
  if (probe) {
    id_of_code.assign(codec.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i)
      id_of_code[codec.encode(pts[i])] = static_cast<std::uint32_t>(i);
  }

  parallel_chunks(flats.size(), threads,
                  [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t j = b; j < e; ++j) {
      auto& on = idx.flat_points[j];
      if (probe) {
        auto s = enumerate_points(f, flats[j]);
        while (auto v = s.next())
          if (c.points().contains(*v))
            on.push_back(id_of_code[codec.encode(*v)]);
        std::sort(on.begin(), on.end());
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i)
          if (membership(f, pts[i], flats[j]))
            on.push_back(static_cast<std::uint32_t>(i));
      }
      idx.flat_counts[j] = on.size();
    }
  });

  for (std::size_t j = 0; j < flats.size(); ++j) {
    idx.total += idx.flat_counts[j];
    for (auto i : idx.flat_points[j])
      idx.point_flats[i].push_back(static_cast<std::uint32_t>(j));
  }
  return idx;
}

HolderReport cs_holder_count(const Configuration& c, const IncidenceIndex& idx,
                             int m) {
  if (m < 1) throw DomainError("cs_holder_count requires m >= 1");
  HolderReport r;
  r.m = m;
  for (auto cnt : idx.flat_counts) r.tuples += upow(cnt, m);
  const std::size_t flats = c.flats().size();
  r.lhs_scaled = r.tuples * upow(flats, m - 1);
  r.rhs_scaled = upow(idx.total, m);
  if (flats == 0) {
    r.holds = true;
    r.equality = true;
    return r;
  }
  r.holds = r.lhs_scaled >= r.rhs_scaled;
  r.equality = r.lhs_scaled == r.rhs_scaled;
  return r;
}

TwoEndsReport jr_decompose(const Configuration& c, const IncidenceIndex& idx,
                           int r, unsigned threads) {
  if (r < 1 || static_cast<std::size_t>(r) > c.k())
    throw DomainError("jr_decompose requires 1 <= r <= k");
  const auto& pts = c.points().points();
  TwoEndsReport out;
  out.r = r;
  out.strata.assign(r + 1, 0);
  for (auto cnt : idx.flat_counts) out.total += upow(cnt, r + 1);

  const unsigned workers = effective_threads(idx.flat_counts.size(), threads);
  std::vector<std::vector<mpz_class>> partial(
      workers, std::vector<mpz_class>(r + 1, 0));
  parallel_chunks(idx.flat_counts.size(), threads,
                  [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t j = b; j < e; ++j) {
      if (idx.flat_counts[j] == 0) continue;
      std::vector<Vector> on;
      on.reserve(idx.flat_points[j].size());
      for (auto i : idx.flat_points[j]) on.push_back(pts[i]);
      SpanLattice lattice(c.field(), on, r);
      auto by_dim = lattice.tuples_by_dimension(r + 1);
      for (int d = 0; d <= r; ++d) partial[w][d] += by_dim[d];
    }
  });
  for (const auto& part : partial)
    for (int d = 0; d <= r; ++d) out.strata[d] += part[d];
  return out;
}

RefinedConfig refine_dyadic(const Configuration& c, const IncidenceIndex& idx) {
  if (idx.total == 0) throw DomainError("refine_dyadic: no incidences");
  std::vector<std::uint64_t> mass(64, 0);
  for (auto cnt : idx.flat_counts)
    if (cnt > 0) mass[floor_log2(cnt)] += cnt;
  int best = -1;
  int buckets = 0;
  for (int j = 0; j < 64; ++j) {
    if (mass[j] == 0) continue;
    ++buckets;
    if (best < 0 || mass[j] >= mass[best]) best = j;
  }
  std::vector<AffineFlat> chosen;
  std::vector<std::uint32_t> ids;
  for (std::size_t j = 0; j < idx.flat_counts.size(); ++j) {
    auto cnt = idx.flat_counts[j];
    if (cnt > 0 && floor_log2(cnt) == best) {
      chosen.push_back(c.flats()[j]);
      ids.push_back(static_cast<std::uint32_t>(j));
    }
  }
  RefinedConfig out{c.with_flats(std::move(chosen)), std::move(ids), best,
                    mass[best], idx.total, buckets};
  return out;
}

std::uint64_t max_coset_count(const Configuration& c, const LinearSubspace& w) {
  const auto& f = c.field();
  std::unordered_map<Vector, std::uint64_t> counts;
  std::uint64_t best = 0;
  for (const auto& v : c.points().points()) {
    auto& slot = counts[reduce(f, w.basis(), v)];
    best = std::max(best, ++slot);
  }
  return best;
}

MaxIcReport check_max_ic(const Configuration& c, const IncidenceIndex& idx,
                         const mpq_class& p_exp, const mpq_class& q_exp) {
  if (!c.direction_separated())
    throw PreconditionError("check_max_ic: family is not direction separated");
  if (p_exp < 1 || q_exp < 1)
    throw DomainError("check_max_ic: exponents must be >= 1");
  MaxIcReport r;
  r.incidences = idx.total;
  for (const auto& fl : c.flats())
    r.direction_sup_sum += max_coset_count(c, fl.direction());
  r.chain_holds = mpz_class(static_cast<unsigned long>(idx.total)) <=
                  r.direction_sup_sum;
  const std::size_t P = c.points().size(), Pi = c.flats().size();
  if (P == 0 || Pi == 0) return r;
  const mpq_class inv_p = 1 / p_exp;
  const mpq_class inv_qc = 1 - 1 / q_exp;  // 1/q'
  const long kk = static_cast<long>(c.k() * (c.n() - c.k()));
  Magnitude denom = Magnitude::power(mpz_class(static_cast<unsigned long>(P)), inv_p) *
                    Magnitude::power(mpz_class(static_cast<unsigned long>(Pi)), inv_qc) *
                    Magnitude::power(mpz_class(c.field().p()), mpq_class(kk) / q_exp);
  r.ratio = Magnitude::of(mpz_class(static_cast<unsigned long>(idx.total))) / denom;
  return r;
}

std::string MainBoundReport::term_name(int i) {
  switch (i) {
    case 0:
      return "P^a*Pi^b*F^a";
    case 1:
      return "P*Pi^((k-1)/k)";
    case 2:
      return "Pi*F^(k-1)";
  }
  return "none";
}

bool MainBoundReport::ratio_at_most(const mpq_class& bound) const {
  if (!ratio) return true;
  Magnitude lhs = Magnitude::of(mpz_class(static_cast<unsigned long>(refined_incidences)));
  Magnitude b = Magnitude::of(bound);
  const Magnitude& top = terms[dominant];
  if (lhs <= b * top) return true;
  if (b * top * Magnitude::of(mpz_class(static_cast<unsigned long>(terms.size()))) < lhs)
    return false;
  return *ratio <= Real(bound.get_num().get_str()) / Real(bound.get_den().get_str());
}

MainBoundReport check_main_bound(const Configuration& c,
                                 const IncidenceIndex& idx) {
  const long k = static_cast<long>(c.k()), n = static_cast<long>(c.n());
  if (k < 2 || k > n - 2)
    throw DomainError("check_main_bound requires 2 <= k <= n-2");
  MainBoundReport r;
  r.points = c.points().size();
  r.flats = c.flats().size();
  r.incidences = idx.total;
  if (idx.total == 0) return r;
  RefinedConfig ref = refine_dyadic(c, idx);
  r.refined_flats = ref.refined.flats().size();
  r.refined_incidences = ref.refined_total;
  r.bucket_level = ref.bucket_level;

  const long d = k * k + 2 * k + 2;
  const mpz_class P(static_cast<unsigned long>(r.points));
  const mpz_class Pi(static_cast<unsigned long>(r.refined_flats));
  const mpz_class F(c.field().p());
  const mpq_class a(k * (k + 1), d), b(k * k + k + 2, d);
  r.terms.push_back(Magnitude::power(P, a) * Magnitude::power(Pi, b) *
                    Magnitude::power(F, a));
  r.terms.push_back(Magnitude::of(P) * Magnitude::power(Pi, mpq_class(k - 1, k)));
  r.terms.push_back(Magnitude::of(Pi) * Magnitude::power(F, k - 1));
  r.dominant = 0;
  for (int i = 1; i < 3; ++i)
    if (r.terms[r.dominant] < r.terms[i]) r.dominant = i;
  Real sum = 0;
  for (const auto& t : r.terms) sum += t.value();
  r.rhs = sum;
  r.ratio = Real(static_cast<unsigned long>(r.refined_incidences)) / sum;
  return r;
}

mpz_class spanning_tuples(const FieldSpec& f, const std::vector<Vector>& points,
                          std::size_t tuple_len, std::size_t dim) {
  if (points.empty()) return 0;
  SpanLattice lattice(f, points, dim);
  return lattice.tuples_by_dimension(static_cast<unsigned>(tuple_len))[dim];
}

namespace {

struct SpineCandidate {
  AffineFlat flat;
  std::vector<std::uint32_t> point_ids;  // sorted
};

// Hyperplanes of `flat` (as (k-1)-flats of F^n) holding at least k points.
std::vector<SpineCandidate> spine_candidates(
    const FieldSpec& f, const AffineFlat& flat,
    const std::vector<std::uint32_t>& on, const std::vector<Vector>& pts,
    const std::vector<LinearSubspace>& hyper_dirs, std::size_t k) {
  std::vector<SpineCandidate> out;
  if (on.size() < k) return out;
  const auto& basis = flat.direction().basis();
  std::vector<Vector> coeffs;
  coeffs.reserve(on.size());
  for (auto i : on) {
    Vector diff = vec_sub(f, pts[i], flat.representative());
    Vector a(k);
    for (std::size_t r = 0; r < k; ++r) a.set(r, diff[basis.pivots[r]]);
    coeffs.push_back(a);
  }
  for (const auto& w : hyper_dirs) {
    std::unordered_map<Vector, std::vector<std::uint32_t>> groups;
    std::vector<Vector> order;
    for (std::size_t t = 0; t < on.size(); ++t) {
      Vector key = reduce(f, w.basis(), coeffs[t]);
      auto [it, fresh] = groups.try_emplace(key);
      if (fresh) order.push_back(key);
      it->second.push_back(on[t]);
    }
    for (const auto& key : order) {
      auto& ids = groups[key];
      if (ids.size() < k) continue;
      std::vector<Vector> dirs;
      for (const auto& row : w.basis().rows) {
        Vector d(flat.ambient());
        for (std::size_t r = 0; r < k; ++r)
          if (row[r] != 0) d = vec_axpy(f, d, row[r], basis.rows[r]);
        dirs.push_back(d);
      }
      AffineFlat sigma(f, LinearSubspace::span(f, flat.ambient(), dirs),
                       pts[ids[0]]);
      out.push_back({std::move(sigma), std::move(ids)});
    }
  }
  return out;
}

}  // namespace

RefinementChainReport build_refinement_chain(const RefinedConfig& refined,
                                             const ChainOptions& opts) {
  const Configuration& c = refined.refined;
  const auto& f = c.field();
  const std::size_t k = c.k();
  const auto& pts = c.points().points();
  IncidenceIndex idx = incidence_count(c, opts.threads);
  if (idx.total == 0) throw DomainError("refinement chain: |I~| = 0");

  RefinementChainReport r;
  r.refined_incidences = idx.total;
  r.refined_flats = c.flats().size();
  r.points = pts.size();
  const mpz_class I(static_cast<unsigned long>(idx.total));
  const mpz_class Pi(static_cast<unsigned long>(r.refined_flats));
  const mpz_class P(static_cast<unsigned long>(r.points));

  for (auto cnt : idx.flat_counts) r.unrestricted_tuples += upow(cnt, k);
  r.holder_bound_holds =
      r.unrestricted_tuples * zpow(Pi, k - 1) >= zpow(I, k);

  r.spine_threshold = mpq_class(I, Pi * 10 * f.p());
  r.spine_threshold.canonicalize();
  r.discard_estimate = mpq_class(zpow(I, k), zpow(mpz_class(10), k) * zpow(Pi, k - 1));
  r.discard_estimate.canonicalize();

  // Spines: (k-1)-subflats of refined flats carrying >= k points.
  const std::vector<LinearSubspace> hyper_dirs =
      grassmannian(k, k - 1, f);
  std::vector<std::vector<SpineCandidate>> per_flat(c.flats().size());
  parallel_chunks(c.flats().size(), opts.threads,
                  [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t j = b; j < e; ++j)
      per_flat[j] = spine_candidates(f, c.flats()[j], idx.flat_points[j], pts,
                                     hyper_dirs, k);
  });
  std::unordered_map<AffineFlat, std::size_t> spine_of;
  std::vector<std::vector<std::uint32_t>> spine_points;
  for (std::size_t j = 0; j < per_flat.size(); ++j) {
    for (auto& cand : per_flat[j]) {
      auto it = spine_of.find(cand.flat);
      if (it == spine_of.end()) {
        std::vector<Vector> on;
        for (auto i : cand.point_ids) on.push_back(pts[i]);
        mpz_class t = spanning_tuples(f, on, k, k - 1);
        if (t == 0) {
          spine_of.emplace(cand.flat, std::numeric_limits<std::size_t>::max());
          continue;
        }
        Spine s;
        s.flat = cand.flat;
        s.points = cand.point_ids.size();
        s.spanning_tuples = t;
        s.qualifies = r.spine_threshold <= mpq_class(static_cast<unsigned long>(s.points));
        it = spine_of.emplace(cand.flat, r.spines.size()).first;
        r.spines.push_back(std::move(s));
        spine_points.push_back(std::move(cand.point_ids));
      }
      if (it->second == std::numeric_limits<std::size_t>::max()) continue;
      r.spines[it->second].flats.push_back(static_cast<std::uint32_t>(j));
    }
  }
  per_flat.clear();

  for (std::size_t s = 0; s < r.spines.size(); ++s) {
    const Spine& sp = r.spines[s];
    const mpz_class m(static_cast<unsigned long>(sp.flats.size()));
    const mpz_class t = sp.spanning_tuples;
    r.ik_prime += t * m;
    if (!sp.qualifies) continue;
    r.ik += t * m;
    r.vk_prime += t * m * m;
    r.vk += t * m * (m - 1);
    if (m >= 2) r.vk_del += m * (m - 1);
    mpz_class off_spine = 0;
    for (auto j : sp.flats) off_spine += idx.flat_counts[j] - sp.points;
    r.vkp += t * (m - 1) * off_spine;
  }
  r.discarded = r.ik_prime - r.ik;
  r.discard_within_estimate = mpq_class(r.discarded) <= r.discard_estimate;
  r.cauchy_schwarz_holds = r.vk_prime * zpow(P, k) >= r.ik * r.ik;

  // f(pi_0, x) and the dyadic family D.
  double pair_work = 0;
  for (const auto& sp : r.spines)
    if (sp.qualifies)
      for (auto j : sp.flats)
        pair_work += double(sp.flats.size()) * double(idx.flat_counts[j]);
  if (pair_work > opts.pair_budget) return r;

  std::unordered_map<std::uint64_t, std::uint64_t> fvals;
  std::vector<std::uint64_t> key_order;
  for (std::size_t s = 0; s < r.spines.size(); ++s) {
    const Spine& sp = r.spines[s];
    if (!sp.qualifies || sp.flats.size() < 2) continue;
    if (!sp.spanning_tuples.fits_ulong_p())
      throw BudgetError("spine tuple count overflows 64 bits", 0);
    const std::uint64_t t = sp.spanning_tuples.get_ui();
    const auto& on_spine = spine_points[s];
    for (auto pi0 : sp.flats)
      for (auto pi : sp.flats) {
        if (pi0 == pi) continue;
        for (auto x : idx.flat_points[pi]) {
          if (std::binary_search(on_spine.begin(), on_spine.end(), x)) continue;
          const std::uint64_t key = std::uint64_t{pi0} * pts.size() + x;
          auto [it, fresh] = fvals.try_emplace(key, 0);
          if (fresh) key_order.push_back(key);
          if (__builtin_add_overflow(it->second, t, &it->second))
            throw BudgetError("f(pi_0, x) overflows 64 bits", 0);
        }
      }
  }
  std::vector<mpz_class> mass(64, 0);
  for (auto key : key_order) {
    const std::uint64_t v = fvals[key];
    r.f_total += mpz_class(static_cast<unsigned long>(v));
    mass[floor_log2(v)] += mpz_class(static_cast<unsigned long>(v));
  }
  int best = -1;
  for (int j = 0; j < 64; ++j)
    if (mass[j] > 0 && (best < 0 || mass[j] >= mass[best])) best = j;
  if (best >= 0) {
    r.d_bucket_level = best;
    r.d_mass = mass[best];
    for (auto key : key_order)
      if (floor_log2(fvals[key]) == best) ++r.d_pairs;
    mpq_class thr(r.vk * I, Pi * static_cast<unsigned long>(r.d_pairs));
    thr.canonicalize();
    r.d_threshold = thr;
  }
  return r;
}

HypothesisResult hypothesis_check(const Configuration& c,
                                  const IncidenceIndex& idx, Hypothesis which,
                                  const mpq_class& margin) {
  if (margin <= 0) throw DomainError("hypothesis margin must be positive");
  HypothesisResult out;
  if (idx.total == 0 || c.points().empty()) {
    out.ratio = Real(0);
    return out;
  }
  RefinedConfig ref = refine_dyadic(c, idx);
  const long k = static_cast<long>(c.k());
  const mpz_class I(static_cast<unsigned long>(ref.refined_total));
  const mpz_class Pi(static_cast<unsigned long>(ref.refined.flats().size()));
  const mpz_class P(static_cast<unsigned long>(c.points().size()));
  Magnitude rhs = which == Hypothesis::H1
                      ? Magnitude::of(P) * Magnitude::power(Pi, mpq_class(k - 1, k))
                      : Magnitude::of(Pi) * Magnitude::power(mpz_class(c.field().p()), k - 1);
  Magnitude ratio = Magnitude::of(I) / rhs;
  out.ratio = ratio.value();
  out.holds = Magnitude::of(margin) <= ratio;
  return out;
}

}  // namespace kplab
