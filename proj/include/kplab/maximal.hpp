#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kplab/config.hpp"
#include "kplab/linalg.hpp"
#include "kplab/magnitude.hpp"

namespace kplab {

/// Nonnegative rational function on F^n, stored densely in codec order.
class GridFunction {
 public:
  GridFunction(const FieldSpec& f, std::size_t n);

  static GridFunction constant(const FieldSpec& f, std::size_t n,
                               const mpq_class& value);
  static GridFunction indicator(const FieldSpec& f, std::size_t n,
                                const std::vector<Vector>& support);

  const FieldSpec& field() const { return field_; }
  std::size_t n() const { return codec_.dim(); }
  const PointCodec& codec() const { return codec_; }

  const mpq_class& at(const Vector& x) const { return values_[codec_.encode(x)]; }
  const mpq_class& at_code(std::uint64_t code) const { return values_[code]; }
  /// Throws DomainError on a negative value.
  void set(const Vector& x, const mpq_class& value);

  bool is_zero() const;
  GridFunction scaled(const mpq_class& c) const;
  GridFunction plus(const GridFunction& o) const;
  mpq_class sum() const;

 private:
  FieldSpec field_;
  PointCodec codec_;
  std::vector<mpq_class> values_;
};

/// Function on G(n,k), in Grassmannian enumeration order.
struct GrassmannFunction {
  std::size_t n = 0, k = 0;
  std::uint32_t p = 0;
  std::vector<LinearSubspace> directions;
  std::vector<mpq_class> values;

  std::optional<mpq_class> at(const LinearSubspace& w) const;
};

/// T f(pi) = max over the cosets x + pi of the sum of f on the coset.
GrassmannFunction apply_maximal(const GridFunction& f, std::size_t k,
                                unsigned threads = 0);

/// The sup over every x in F^n instead of over cosets; for small checks.
mpq_class maximal_at_by_points(const GridFunction& f, const LinearSubspace& w);

/// A rational exponent >= 1, or infinity.
struct LebesgueExponent {
  bool infinite = false;
  mpq_class value = 1;

  static LebesgueExponent inf() { return {true, 0}; }
  static LebesgueExponent of(const mpq_class& v);
  /// "11/6", "2", "inf".
  static LebesgueExponent parse(const std::string& text);
  std::string str() const;
};

/// A norm value: exact when the power sum is exact (integer exponent, a
/// single nonzero value, or infinity), else a 50-digit evaluation.
struct Norm {
  std::optional<Magnitude> exact;
  Real approx;

  Real value() const { return exact ? exact->value() : approx; }
};

Norm lp_norm(const GridFunction& f, const LebesgueExponent& p);

/// (p^{-k(n-k)} sum g^q)^{1/q}; the max for q = inf.
Norm lq_norm_grassmann(const GrassmannFunction& g, const LebesgueExponent& q);

/// nu(G(n,k)) = |G(n,k)| p^{-k(n-k)}.
mpq_class nu_total(std::size_t n, std::size_t k, const FieldSpec& f);

struct OperatorRatio {
  Norm numerator;    // ||T f||_q
  Norm denominator;  // ||f||_p
  Norm ratio;
};

/// ||T f||_{L^q(nu)} / ||f||_{L^p(dx)}. DomainError for f = 0.
OperatorRatio operator_ratio(const GridFunction& f, const LebesgueExponent& p,
                             const LebesgueExponent& q, std::size_t k,
                             unsigned threads = 0);

enum class Candidate { constant, point, flats, random, degenerate };

struct SearchResult {
  Real best_ratio = 0;
  std::string best_name;
  std::optional<GridFunction> witness;
  std::vector<std::pair<std::string, Real>> tried;
};

/// Maximizes the operator ratio over built-in candidate functions: f = 1,
/// a point spike, indicators of r-flats (r = 0..k), random sets at dyadic
/// densities, and unions of the flats of degenerate configurations.
SearchResult empirical_norm_search(std::size_t n, std::size_t k,
                                   const FieldSpec& f, const LebesgueExponent& p,
                                   const LebesgueExponent& q,
                                   const std::vector<Candidate>& candidates,
                                   std::uint64_t seed, unsigned threads = 0);

/// JSON {"p","n","values":[{"point":[..],"value":"a/b"}]} over the support.
std::string serialize(const GridFunction& f);
GridFunction deserialize_grid_function(const std::string& text);

}  // namespace kplab
