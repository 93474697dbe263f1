#pragma once

#include <string>
#include <variant>

#include <gmpxx.h>

namespace kplab {

using ExactRational = mpq_class;

/// Exponent triple for the expression |P|^a |Pi|^b |F|^c.
struct BoundExpr {
  ExactRational a, b, c;
  bool operator==(const BoundExpr&) const = default;
};

ExactRational alpha(long k);
ExactRational alpha_r(long k, long r);

BoundExpr convex_combine(const BoundExpr& b1, const BoundExpr& b2,
                         const ExactRational& t);

/// Main-term exponents k(k+1)/(k^2+2k+2), (k^2+k+2)/(k^2+2k+2),
/// k(k+1)/(k^2+2k+2).
BoundExpr main_term(long k);
/// |I| <~ |P|^{(k+1)/(k+2)} |Pi|^{(k+1)/(k+2)} |F|^{(k-1)/(k+2)}
BoundExpr spine_bound(long k);
/// |I| <~ |P|^{(k+1)/(2k+1)} |Pi|^{2k/(2k+1)} |F|^{(k^2-1)/(2k+1)}
BoundExpr crude_spine_bound(long k);
/// First chain bound for (k, r).
BoundExpr chain_bound(long k, long r);
/// Second chain bound; `pi_denominator` is the denominator used for the
/// |Pi| exponent ((k+1)(r+1)-k as printed, (k+1)(r+1) corrected).
BoundExpr crude_chain_bound(long k, long r, long pi_denominator);

/// alpha(k)-combination of spine_bound and crude_spine_bound equals
/// main_term(k).
bool verify_identity_main(long k);

enum class ChainVerdict {
  holds_as_printed,
  holds_with_corrected_denominator,
  fails
};
std::string to_string(ChainVerdict v);

/// Tries the printed |Pi| denominator of the second chain bound, then
/// (k+1)(r+1). Accepts 1 <= r <= k-1, one step wider than alpha_r.
ChainVerdict verify_identity_chain(long k, long r);

/// Hypothesis (n-k)b + c >= 1 failed.
struct MaxIckRejection {
  ExactRational lhs;  // (n-k)b + c
  std::string reason;
};

struct MaxIckExponents {
  ExactRational p, q;
  ExactRational p_conjugate;  // p' = p/(p-1); meaningless when p == 1
  bool q_from_conjugate;      // q = (n-k)p' was the binding minimum
};

/// From |I~| <~ |P|^a |Pi~|^{1-b} |F|^{k(1-c)} + ... derive the (p, q) at
/// which the maximal operator is bounded.
std::variant<MaxIckExponents, MaxIckRejection> max_ick_derive(
    const ExactRational& a, const ExactRational& b, const ExactRational& c,
    long n, long k);

/// (a, b, c) such that the main term reads |P|^a |Pi|^{1-b} |F|^{k(1-c)}.
BoundExpr main_term_abc(long k);

struct TheoremExponents {
  ExactRational p, q;
};
/// p = (kn+k+1)/(k(k+1)), q = (n-k)p'. Requires 2 <= k <= n-2.
TheoremExponents theorem_exponents(long n, long k);

/// Exponents of |F| in |P||Pi|, |Pi||F|^r, |P||Pi|^{r/(r+1)}
/// |F|^{(k-r)(n-k)/(r+1)} and the best-possible bound, evaluated at
/// |P| = |F|^r, |Pi| = |F|^{(k-r)(n-k)}.
struct DegenerateCoincidence {
  ExactRational trivial, spine, two_ends, best;
  bool all_equal() const {
    return trivial == spine && spine == two_ends && two_ends == best;
  }
};
DegenerateCoincidence degenerate_coincidence(long n, long k, long r);

/// Parses "a/b", "a" or "-a/b" into a canonical rational. Throws
/// std::invalid_argument.
ExactRational parse_rational(const std::string& text);

}  // namespace kplab
