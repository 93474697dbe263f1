#include "kplab/exponents.hpp"

#include <stdexcept>

#include "kplab/errors.hpp"

namespace kplab {

namespace {

ExactRational frac(long num, long den) {
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

ExactRational alpha(long k) {
  if (k < 2) throw DomainError("alpha(k) requires k >= 2");
  ExactRational a = frac(k * k * k + k * k - 4 * k - 4, k * k * k + k * k - 2);
  if (a < 0 || a > 1) throw std::logic_error("alpha(k) left [0, 1]");
  return a;
}

namespace {

ExactRational alpha_r_formula(long k, long r) {
  const long d = k * k + 2 * k + 2;
  return frac(k * (k + 1) * (r + 1) - r * d, d) *
         frac((k + 1) * (r + 1) - k, k * r);
}

}  // namespace

ExactRational alpha_r(long k, long r) {
  if (k < 2 || r < 1 || r > k - 2)
    throw DomainError("alpha_r(k) requires k >= 2 and 1 <= r <= k-2");
  ExactRational a = alpha_r_formula(k, r);
  if (a < 0 || a > 1) throw std::logic_error("alpha_r(k) left [0, 1]");
  return a;
}

BoundExpr convex_combine(const BoundExpr& b1, const BoundExpr& b2,
                         const ExactRational& t) {
  if (t < 0 || t > 1) throw DomainError("convex weight outside [0, 1]");
  ExactRational s = 1 - t;
  return {t * b1.a + s * b2.a, t * b1.b + s * b2.b, t * b1.c + s * b2.c};
}

BoundExpr main_term(long k) {
  const long d = k * k + 2 * k + 2;
  return {frac(k * (k + 1), d), frac(k * k + k + 2, d), frac(k * (k + 1), d)};
}

BoundExpr spine_bound(long k) {
  return {frac(k + 1, k + 2), frac(k + 1, k + 2), frac(k - 1, k + 2)};
}

BoundExpr crude_spine_bound(long k) {
  return {frac(k + 1, 2 * k + 1), frac(2 * k, 2 * k + 1),
          frac(k * k - 1, 2 * k + 1)};
}

BoundExpr chain_bound(long k, long r) {
  const long d = (k + 1) * (r + 1) - k;
  return {frac(r * (k + 1), d), frac((k + 1) * (r + 1) - k - r, d),
          frac(k - r, d)};
}

BoundExpr crude_chain_bound(long k, long r, long pi_denominator) {
  const long d = (k + 1) * (r + 1);
  return {frac(r * (k + 1), d), frac(d - r, pi_denominator),
          frac(k * k + k - r, d)};
}

bool verify_identity_main(long k) {
  return convex_combine(spine_bound(k), crude_spine_bound(k), alpha(k)) ==
         main_term(k);
}

std::string to_string(ChainVerdict v) {
  switch (v) {
    case ChainVerdict::holds_as_printed:
      return "holds_as_printed";
    case ChainVerdict::holds_with_corrected_denominator:
      return "holds_with_corrected_denominator";
    case ChainVerdict::fails:
      return "fails";
  }
  return "fails";
}

ChainVerdict verify_identity_chain(long k, long r) {
  if (k < 2 || r < 1 || r > k - 1)
    throw DomainError("verify_identity_chain requires k >= 2 and 1 <= r <= k-1");
  const ExactRational a = alpha_r_formula(k, r);
  if (a < 0 || a > 1) return ChainVerdict::fails;
  const BoundExpr target = main_term(k);
  const BoundExpr first = chain_bound(k, r);
  const long printed = (k + 1) * (r + 1) - k;
  const long corrected = (k + 1) * (r + 1);
  if (convex_combine(first, crude_chain_bound(k, r, printed), a) == target)
    return ChainVerdict::holds_as_printed;
  if (convex_combine(first, crude_chain_bound(k, r, corrected), a) == target)
    return ChainVerdict::holds_with_corrected_denominator;
  return ChainVerdict::fails;
}

std::variant<MaxIckExponents, MaxIckRejection> max_ick_derive(
    const ExactRational& a, const ExactRational& b, const ExactRational& c,
    long n, long k) {
  for (const auto* x : {&a, &b, &c})
    if (*x < 0 || *x > 1) throw DomainError("a, b, c must lie in [0, 1]");
  const ExactRational lhs = (n - k) * b + c;
  if (lhs < 1)
    return MaxIckRejection{
        lhs, "(n-k)b + c = " + lhs.get_str() +
                 " < 1; the hypothesis needs n >= k+2 for these exponents"};
  if (a == 0) throw DomainError("a = 0 gives p = infinity");
  MaxIckExponents out;
  out.p = lhs / a;
  out.p.canonicalize();
  if (out.p == 1) {
    if (b == 0) throw DomainError("p = 1 and b = 0 give q = infinity");
    out.p_conjugate = 0;
    out.q = lhs / b;
    out.q_from_conjugate = false;
  } else {
    out.p_conjugate = out.p / (out.p - 1);
    ExactRational from_conj = (n - k) * out.p_conjugate;
    if (b == 0) {
      out.q = from_conj;
      out.q_from_conjugate = true;
    } else {
      ExactRational from_b = lhs / b;
      out.q_from_conjugate = from_conj <= from_b;
      out.q = out.q_from_conjugate ? from_conj : from_b;
    }
  }
  out.q.canonicalize();
  return out;
}

BoundExpr main_term_abc(long k) {
  BoundExpr m = main_term(k);
  return {m.a, 1 - m.b, 1 - m.c / k};
}

TheoremExponents theorem_exponents(long n, long k) {
  if (k < 2 || k > n - 2)
    throw DomainError("theorem exponents need 2 <= k <= n-2");
  ExactRational p = frac(k * n + k + 1, k * (k + 1));
  ExactRational q = (n - k) * (p / (p - 1));
  q.canonicalize();
  return {p, q};
}

DegenerateCoincidence degenerate_coincidence(long n, long k, long r) {
  if (r < 0 || r >= k || k >= n)
    throw DomainError("degenerate coincidence needs 0 <= r < k < n");
  const ExactRational P = r;
  const ExactRational Pi = (k - r) * (n - k);
  DegenerateCoincidence d;
  d.trivial = P + Pi;
  d.spine = Pi + r;
  d.two_ends = P + Pi * frac(r, r + 1) + frac((k - r) * (n - k), r + 1);
  d.best = P * frac(k, n) + Pi * frac(n - 1, n) + frac(k * (n - k), n);
  return d;
}

ExactRational parse_rational(const std::string& text) {
  ExactRational q;
  auto slash = text.find('/');
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!is_int(text)) throw std::invalid_argument("malformed rational '" + text + "'");
    q = mpz_class(text[0] == '+' ? text.substr(1) : text);
    return q;
  }
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + text + "'");
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q = mpq_class(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return q;
}

}  // namespace kplab
