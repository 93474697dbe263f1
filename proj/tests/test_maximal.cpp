#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "kplab/errors.hpp"
#include "kplab/maximal.hpp"
#include "oracles.hpp"

using namespace kplab;

namespace {

GridFunction random_function(const FieldSpec& f, std::size_t n, std::uint64_t seed,
                             int density_percent = 40) {
  std::mt19937_64 rng(seed);
  GridFunction g(f, n);
  for (const auto& x : gen_point_cloud(n, f, 1, 0))
    if (int(rng() % 100) < density_percent) g.set(x, mpq_class(long(rng() % 7 + 1), long(rng() % 3 + 1)));
  return g;
}

double d(const Real& r) { return r.convert_to<double>(); }

}  // namespace

TEST_CASE("maximal function examples") {
  FieldSpec f(3);
  GridFunction one = GridFunction::constant(f, 4, 1);
  GrassmannFunction t = apply_maximal(one, 2);
  CHECK(t.directions.size() == 130);
  for (const auto& v : t.values) CHECK(v == 9);

  GridFunction spike(f, 4);
  spike.set(Vector{1, 2, 0, 1}, 1);
  for (const auto& v : apply_maximal(spike, 2).values) CHECK(v == 1);

  const Configuration deg = gen_degenerate(4, 2, 1, f);
  const auto& pi = deg.flats()[0];
  GridFunction chi = GridFunction::indicator(f, 4, flat_points(f, pi));
  GrassmannFunction tc = apply_maximal(chi, 2);
  CHECK(tc.at(pi.direction()) == mpq_class(9));
  for (std::size_t i = 0; i < tc.values.size(); ++i)
    if (!(tc.directions[i] == pi.direction())) CHECK(tc.values[i] < 9);
  CHECK_THROWS_AS(spike.set(Vector{0, 0, 0, 0}, -1), DomainError);
}

TEST_CASE("coset maximum equals the sup over every point") {
  const std::size_t shapes[][3] = {{2, 1, 3}, {3, 1, 3}, {3, 2, 3}, {3, 1, 5}};
  for (const auto& sh : shapes)
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      FieldSpec f(static_cast<std::uint32_t>(sh[2]));
      GridFunction g = random_function(f, sh[0], seed);
      GrassmannFunction t = apply_maximal(g, sh[1], 1 + seed % 2);
      REQUIRE(t.directions.size() == oracle::grassmannian_size(sh[0], sh[1], f));
      for (std::size_t i = 0; i < t.directions.size(); ++i) {
        REQUIRE(t.values[i] == oracle::maximal_sup(g, t.directions[i]));
        REQUIRE(t.values[i] == maximal_at_by_points(g, t.directions[i]));
      }
    }
}

TEST_CASE("maximal function properties") {
  FieldSpec f(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GridFunction a = random_function(f, 3, seed);
    GridFunction b = random_function(f, 3, seed + 100);
    GrassmannFunction ta = apply_maximal(a, 1), tb = apply_maximal(b, 1);
    GrassmannFunction tab = apply_maximal(a.plus(b), 1);
    GrassmannFunction t3 = apply_maximal(a.scaled(mpq_class(3, 2)), 1);
    for (std::size_t i = 0; i < ta.values.size(); ++i) {
      REQUIRE(ta.values[i] <= a.sum());
      REQUIRE(tab.values[i] <= ta.values[i] + tb.values[i]);
      REQUIRE(t3.values[i] == ta.values[i] * mpq_class(3, 2));
    }
  }
}

TEST_CASE("exponents") {
  CHECK(LebesgueExponent::parse("inf").infinite);
  CHECK(LebesgueExponent::parse("11/6").value == mpq_class(11, 6));
  CHECK(LebesgueExponent::parse("22/5").str() == "22/5");
  CHECK(LebesgueExponent::inf().str() == "inf");
  CHECK_THROWS(LebesgueExponent::of(mpq_class(1, 2)));
  CHECK_THROWS(LebesgueExponent::parse("x"));
}

TEST_CASE("norms") {
  FieldSpec f(3);
  GridFunction one = GridFunction::constant(f, 4, 1);
  Norm n2 = lp_norm(one, LebesgueExponent::of(2));
  REQUIRE(n2.exact);
  CHECK(*n2.exact == Magnitude::of(mpz_class(9)));
  GridFunction spike(f, 4);
  spike.set(Vector{0, 0, 0, 0}, 1);
  Norm ns = lp_norm(spike, LebesgueExponent::of(mpq_class(11, 6)));
  REQUIRE(ns.exact);
  CHECK(*ns.exact == Magnitude::of(mpz_class(1)));
  CHECK(*lp_norm(one, LebesgueExponent::inf()).exact == Magnitude::of(mpz_class(1)));
  // a non-integer exponent with distinct values is evaluated numerically
  GridFunction two = one;
  two.set(Vector{0, 0, 0, 0}, 2);
  Norm nr = lp_norm(two, LebesgueExponent::of(mpq_class(3, 2)));
  CHECK_FALSE(nr.exact);
  CHECK(d(nr.approx) == doctest::Approx(std::pow(80.0 + std::pow(2.0, 1.5), 2.0 / 3.0)));

  const Configuration deg = gen_degenerate(4, 2, 1, f);
  const auto& pi = deg.flats()[0];
  GrassmannFunction chi = apply_maximal(GridFunction::indicator(f, 4, flat_points(f, pi)), 2);
  CHECK(d(lp_norm(GridFunction::indicator(f, 4, flat_points(f, pi)), LebesgueExponent::of(1)).value()) == 9);

  FieldSpec f3(3);
  GrassmannFunction g = apply_maximal(GridFunction::constant(f3, 2, mpq_class(1, 3)), 1);
  for (auto& v : g.values) v = 1;
  // 4 directions, weight 1/3
  CHECK(*lq_norm_grassmann(g, LebesgueExponent::of(1)).exact == Magnitude::of(mpq_class(4, 3)));
  for (auto& v : g.values) v = 0;
  CHECK(*lq_norm_grassmann(g, LebesgueExponent::of(2)).exact == Magnitude::zero());
  g.values = {1, 5, 2, 0};
  CHECK(*lq_norm_grassmann(g, LebesgueExponent::inf()).exact == Magnitude::of(mpz_class(5)));
  CHECK(chi.values.size() == 130);
}

TEST_CASE("nu total") {
  CHECK(nu_total(4, 2, FieldSpec(3)) == mpq_class(130, 81));
  CHECK(nu_total(2, 1, FieldSpec(3)) == mpq_class(4, 3));
  CHECK(nu_total(3, 1, FieldSpec(2)) == mpq_class(7, 4));
}

TEST_CASE("operator ratio") {
  FieldSpec f(3);
  GridFunction one = GridFunction::constant(f, 4, 1);
  OperatorRatio r = operator_ratio(one, LebesgueExponent::of(1), LebesgueExponent::of(1), 2);
  REQUIRE(r.ratio.exact);
  CHECK(*r.ratio.exact == Magnitude::of(mpq_class(9 * 130, 81 * 81)));
  OperatorRatio r2 = operator_ratio(one, LebesgueExponent::of(2), LebesgueExponent::of(1), 2);
  CHECK(*r2.ratio.exact == Magnitude::of(mpq_class(9 * 130, 81 * 9)));

  GridFunction spike(f, 4);
  spike.set(Vector{2, 2, 2, 2}, 5);
  OperatorRatio rs = operator_ratio(spike, LebesgueExponent::of(mpq_class(11, 6)),
                                    LebesgueExponent::of(2), 2);
  REQUIRE(rs.ratio.exact);
  CHECK(*rs.ratio.exact == Magnitude::of(mpq_class(130, 81)).pow(mpq_class(1, 2)));

  CHECK_THROWS_AS(operator_ratio(GridFunction(f, 4), LebesgueExponent::of(1),
                                 LebesgueExponent::of(1), 2),
                  DomainError);
}

TEST_CASE("empirical search") {
  FieldSpec f(3);
  auto p = LebesgueExponent::of(mpq_class(11, 6));
  auto q = LebesgueExponent::of(mpq_class(22, 5));
  SearchResult r = empirical_norm_search(
      4, 2, f, p, q,
      {Candidate::constant, Candidate::point, Candidate::flats, Candidate::random,
       Candidate::degenerate},
      1);
  REQUIRE(r.tried.size() >= 5);
  CHECK(r.tried[0].first == "constant");
  CHECK(d(r.tried[0].second) == doctest::Approx(0.911897).epsilon(1e-5));
  CHECK(r.tried[1].first == "point");
  CHECK(d(r.tried[1].second) == doctest::Approx(1.11351).epsilon(1e-5));
  Real best = 0;
  for (const auto& [name, v] : r.tried) best = std::max(best, v);
  CHECK(r.best_ratio == best);
  REQUIRE(r.witness);
  CHECK(d(operator_ratio(*r.witness, p, q, 2).ratio.value()) == doctest::Approx(d(best)));

  SearchResult again = empirical_norm_search(4, 2, f, p, q, {Candidate::random}, 1, 3);
  SearchResult first = empirical_norm_search(4, 2, f, p, q, {Candidate::random}, 1, 1);
  CHECK(again.tried == first.tried);
}

TEST_CASE("grid function serialization") {
  FieldSpec f(5);
  GridFunction g = random_function(f, 2, 7);
  GridFunction back = deserialize_grid_function(serialize(g));
  CHECK(back.n() == 2);
  CHECK(back.field().p() == 5);
  for (const auto& x : gen_point_cloud(2, f, 1, 0)) CHECK(back.at(x) == g.at(x));
}
