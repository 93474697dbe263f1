#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kplab/config.hpp"
#include "kplab/magnitude.hpp"

namespace kplab {

/// Incidences between the points and flats of a configuration.
/// Points are indexed by their position in config.points().points().
struct IncidenceIndex {
  std::vector<std::uint64_t> flat_counts;               // |P ∩ pi|
  std::vector<std::vector<std::uint32_t>> flat_points;  // sorted point ids
  std::vector<std::vector<std::uint32_t>> point_flats;  // sorted flat ids
  std::uint64_t total = 0;
};

IncidenceIndex incidence_count(const Configuration& c, unsigned threads = 0);

struct HolderReport {
  int m = 1;
  mpz_class tuples;      // sum_pi c_pi^m
  mpz_class lhs_scaled;  // tuples * |Pi|^{m-1}
  mpz_class rhs_scaled;  // |I|^m
  bool holds = true;     // lhs_scaled >= rhs_scaled
  bool equality = false;
};

/// Ordered (m+1)-tuples (p_1..p_m, pi) with every p_i on pi, and the
/// Hölder lower bound |I|^m / |Pi|^{m-1} checked over the integers.
HolderReport cs_holder_count(const Configuration& c, const IncidenceIndex& idx,
                             int m);

struct TwoEndsReport {
  int r = 1;
  mpz_class total;                  // |J_r| = sum_pi c_pi^{r+1}
  std::vector<mpz_class> strata;    // |J_r^(j)|, j = 0..r
};

/// Splits J_r by the affine dimension j of [p_0, ..., p_r].
TwoEndsReport jr_decompose(const Configuration& c, const IncidenceIndex& idx,
                           int r, unsigned threads = 0);

struct RefinedConfig {
  Configuration refined;               // same P, flats = Pi~
  std::vector<std::uint32_t> flat_ids;  // indices into the parent's flats
  int bucket_level = 0;                 // counts in [2^j, 2^{j+1})
  std::uint64_t refined_total = 0;      // |I~|
  std::uint64_t parent_total = 0;       // |I|
  int nonempty_buckets = 0;
};

/// Dyadic pigeonhole on per-flat counts; the bucket with the largest
/// incidence sum wins, ties to the higher level. Throws DomainError if
/// |I| = 0.
RefinedConfig refine_dyadic(const Configuration& c, const IncidenceIndex& idx);

/// Largest |P ∩ (x + W)| over the cosets of w.
std::uint64_t max_coset_count(const Configuration& c, const LinearSubspace& w);

struct MaxIcReport {
  std::uint64_t incidences = 0;
  /// |I| / (|P|^{1/p} |Pi|^{1/q'} |F|^{k(n-k)/q}); absent when P or Pi empty.
  std::optional<Magnitude> ratio;
  mpz_class direction_sup_sum;  // sum over directions of T chi_P
  bool chain_holds = true;      // |I| <= direction_sup_sum
};

MaxIcReport check_max_ic(const Configuration& c, const IncidenceIndex& idx,
                         const mpq_class& p_exp, const mpq_class& q_exp);

struct MainBoundReport {
  std::uint64_t points = 0, flats = 0, incidences = 0;
  std::uint64_t refined_flats = 0, refined_incidences = 0;
  int bucket_level = 0;
  /// |P|^a|Pi~|^b|F|^a, |P||Pi~|^{(k-1)/k}, |Pi~||F|^{k-1}
  std::vector<Magnitude> terms;
  int dominant = -1;  // index into terms
  std::optional<Real> rhs;
  std::optional<Real> ratio;  // |I~| / sum(terms)

  /// Exact where a single term decides it, else 50-digit evaluation.
  bool ratio_at_most(const mpq_class& bound) const;
  static std::string term_name(int i);
};

MainBoundReport check_main_bound(const Configuration& c,
                                 const IncidenceIndex& idx);

/// One spine: a (k-1)-flat sigma spanned by points of P and lying in at
/// least one refined flat.
struct Spine {
  AffineFlat flat;
  std::uint64_t points = 0;           // |P ∩ sigma|
  mpz_class spanning_tuples;          // ordered k-tuples spanning sigma
  std::vector<std::uint32_t> flats;   // refined flats containing sigma
  bool qualifies = false;             // |P∩sigma| >= |I~| / (10 |Pi~| p)
};

struct RefinementChainReport {
  std::uint64_t refined_incidences = 0;  // |I~|
  std::uint64_t refined_flats = 0;       // |Pi~|
  std::uint64_t points = 0;

  mpz_class unrestricted_tuples;   // sum over Pi~ of c^k
  bool holder_bound_holds = true;  // unrestricted * |Pi~|^{k-1} >= |I~|^k

  mpq_class spine_threshold;       // |I~| / (10 |Pi~| p)
  mpz_class ik_prime, ik;
  mpz_class discarded;             // ik_prime - ik
  mpq_class discard_estimate;      // |I~|^k / (10^k |Pi~|^{k-1})
  bool discard_within_estimate = true;

  mpz_class vk_prime, vk;
  bool cauchy_schwarz_holds = true;  // vk_prime * |P|^k >= ik^2
  mpz_class vkp;
  mpz_class vk_del;

  std::uint64_t d_pairs = 0;     // |D|
  int d_bucket_level = -1;
  mpz_class d_mass;              // sum of f over D
  mpz_class f_total;             // sum of f over all pairs (= vkp)
  std::optional<mpq_class> d_threshold;  // |V_k||I~| / (|Pi~||D|)

  bool monotone() const { return ik <= ik_prime && vk <= vk_prime; }

  std::vector<Spine> spines;
};

struct ChainOptions {
  /// Skip building f(pi_0, x) and D when the estimated pair work exceeds it.
  double pair_budget = 5e7;
  unsigned threads = 0;
};

/// Builds I~_k', I~_k, V_k', V_k, V_{k,p}, V_{k,del} and D(P, Pi~) on the
/// refined configuration. Throws DomainError when |I~| = 0.
RefinementChainReport build_refinement_chain(const RefinedConfig& refined,
                                             const ChainOptions& opts = {});

/// Ordered k-tuples from `points` (all inside one (k-1)-flat) whose affine
/// hull has dimension exactly `dim`, by inclusion-exclusion over the flats
/// the points span.
mpz_class spanning_tuples(const FieldSpec& f, const std::vector<Vector>& points,
                          std::size_t tuple_len, std::size_t dim);

enum class Hypothesis { H1, H2 };

struct HypothesisResult {
  std::optional<Real> ratio;  // |I~| / RHS; 0 when P empty
  bool holds = false;         // |I~| >= margin * RHS, decided exactly
};

HypothesisResult hypothesis_check(const Configuration& c,
                                  const IncidenceIndex& idx, Hypothesis which,
                                  const mpq_class& margin);

}  // namespace kplab
