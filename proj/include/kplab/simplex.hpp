#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "kplab/config.hpp"
#include "kplab/incidence.hpp"
#include "kplab/magnitude.hpp"

namespace kplab {

/// k+2 affinely independent points; face i is the hull without vertex i.
struct Simplex {
  std::vector<Vector> vertices;
  std::vector<AffineFlat> faces;
};

/// Vertex sets of k+2 affinely independent points of P grouped by how many
/// of their k+2 facets are flats of the family: profile[f] for f >= 2.
struct FacetProfile {
  std::vector<mpz_class> by_facets;  // size k+3
  std::uint64_t subsets_scanned = 0;
};

struct SimplexOptions {
  unsigned threads = 0;
  /// BudgetError when the estimated (k+1)-subset scan exceeds this.
  double budget = 2e8;
};

/// Estimated work of facet_profile: sum over flats of C(c, k+1).
double simplex_work_estimate(const Configuration& c, const IncidenceIndex& idx);

FacetProfile facet_profile(const Configuration& c, const IncidenceIndex& idx,
                           const SimplexOptions& opts = {});

/// Unordered (k+1)-simplices with vertices in P and all faces in the family.
mpz_class count_simplices(const Configuration& c, const SimplexOptions& opts = {});

/// (k+2)! times the unordered count.
mpz_class ordered_simplices(const mpz_class& unordered, std::size_t k);

/// Every (k+2)-subset of P checked directly. Throws BudgetError if |P| > 40.
mpz_class count_simplices_bruteforce(const Configuration& c);

/// The simplices themselves, in discovery order. For small inputs.
std::vector<Simplex> enumerate_simplices(const Configuration& c,
                                         std::size_t limit = 100000);

/// (k,l)-chains, ordered in points and flats. DomainError unless
/// 2 <= l <= k+1.
mpz_class count_chains(const Configuration& c, int l,
                       const SimplexOptions& opts = {});

/// Distinct plane pairs (pi_0, pi) of V_k.
mpz_class v_k_del(const RefinementChainReport& chain);

struct LambdaReport {
  std::uint64_t pairs_examined = 0;
  std::uint64_t max_flats = 0;  // max |{pi in Pi~ : pi inside Lambda_v}|
  bool computed = false;
};

/// For every pair in V_{k,del}, counts family flats inside the (k+1)-flat
/// spanned by the pair. Skipped when pairs * |Pi~| exceeds the budget.
LambdaReport lambda_counts(const Configuration& refined,
                           const RefinementChainReport& chain,
                           double budget = 5e7);

struct SimplexBoundReport {
  std::uint64_t points = 0, flats = 0, incidences = 0;
  std::uint64_t refined_flats = 0, refined_incidences = 0;
  mpz_class simplices;           // |S_k(P, Pi~)|, unordered
  mpz_class simplices_ordered;   // (k+2)! times
  mpz_class simplices_full;      // |S_k(P, Pi)|, unordered
  mpz_class vk, vk_del;
  /// |V_k| (|Pi~| p / |I~|)^k p^{k^2}
  std::optional<Magnitude> upper;
  /// |V_k|^{k+1} |Pi~|^{k^2-2k-2} / (|P|^k |I~|^{k^2-k-2})
  std::optional<Magnitude> lower;
  /// |P|^{k+2} |Pi|^{k+2} (|I|/(|P||Pi|))^{(k+1)(k+2)}
  std::optional<Magnitude> heuristic;
  std::optional<Magnitude> upper_ratio, lower_ratio, heuristic_ratio;
  bool upper_holds = true;  // |S_k| <= upper, exact
  LambdaReport lambda;
};

/// Evaluates the simplex upper, lower and heuristic expressions. Ratios are
/// |S_k| / expression; lower and heuristic ratios are absent when
/// |S_k| = 0, any ratio is absent when its expression is 0.
SimplexBoundReport simplex_bound_report(const Configuration& c,
                                        const SimplexOptions& opts = {});

}  // namespace kplab
