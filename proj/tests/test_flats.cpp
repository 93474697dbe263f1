#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "kplab/errors.hpp"
#include "kplab/flats.hpp"
#include "oracles.hpp"

using namespace kplab;

TEST_CASE("gaussian binomial examples") {
  CHECK(gaussian_binomial(3, 1, 2) == 7);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(6, 0, 5) == 1);
  CHECK(gaussian_binomial(5, 2, 3) == 1210);
  CHECK(oracle::q_binomial(5, 2, 3) == 1210);
  CHECK_THROWS_AS(gaussian_binomial(2, 3, 2), DomainError);
}

TEST_CASE("gaussian binomial matches the q-Pascal recursion and duality") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (long n = 0; n <= 8; ++n)
      for (long k = 0; k <= n; ++k) {
        REQUIRE(gaussian_binomial(n, k, p) == oracle::q_binomial(n, k, p));
        REQUIRE(gaussian_binomial(n, k, p) == gaussian_binomial(n, n - k, p));
      }
}

TEST_CASE("enumeration examples") {
  auto count = [](std::size_t n, std::size_t k, std::uint32_t p) {
    std::size_t c = 0;
    auto s = enumerate_grassmannian(n, k, FieldSpec(p));
    while (s.next()) ++c;
    return c;
  };
  CHECK(count(2, 1, 2) == 3);
  CHECK(count(3, 1, 2) == 7);
  CHECK(count(3, 3, 5) == 1);
  CHECK(count(4, 4, 3) == 1);
}

TEST_CASE("census against the span-set oracle") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 0; k <= n; ++k)
        REQUIRE(grassmannian(n, k, FieldSpec(p)).size() ==
                oracle::grassmannian_size(n, k, FieldSpec(p)));
  CHECK(grassmannian(4, 2, FieldSpec(3)).size() == oracle::grassmannian_size(4, 2, FieldSpec(3)));
  CHECK(grassmannian(4, 1, FieldSpec(5)).size() == oracle::grassmannian_size(4, 1, FieldSpec(5)));
}

TEST_CASE("enumerated subspaces are canonical, distinct and ordered by pivot pattern") {
  FieldSpec f(3);
  auto all = grassmannian(4, 2, f);
  std::set<LinearSubspace> seen(all.begin(), all.end());
  CHECK(seen.size() == all.size());
  for (const auto& w : all) {
    REQUIRE(w.dim() == 2);
    REQUIRE(rref(f, 4, w.basis().rows).rows == w.basis().rows);
  }
  auto patterns = pivot_patterns(4, 2);
  CHECK(patterns.size() == 6);
  CHECK(all.front().basis().pivots == patterns.front());
  CHECK(all.back().basis().pivots == patterns.back());
}

TEST_CASE("enumerate_points") {
  FieldSpec f3(3), f5(5);
  AffineFlat pt(f3, LinearSubspace::span(f3, 2, {}), Vector{1, 2});
  CHECK(flat_points(f3, pt) == std::vector<Vector>{Vector{1, 2}});
  std::vector<Vector> d = {Vector{1, 1}};
  CHECK(flat_points(f3, AffineFlat(f3, LinearSubspace::span(f3, 2, d), Vector{0, 1})).size() == 3);
  auto plane = grassmannian(4, 2, f5)[17];
  auto pts = flat_points(f5, AffineFlat(f5, plane, Vector{1, 2, 3, 4}));
  CHECK(pts.size() == 25);
  CHECK(std::set<Vector>(pts.begin(), pts.end()).size() == 25);
}

TEST_CASE("intersection examples") {
  FieldSpec f3(3);
  std::vector<Vector> d = {Vector{1, 1}};
  auto dir = LinearSubspace::span(f3, 2, d);
  AffineFlat a(f3, dir, Vector{0, 0}), b(f3, dir, Vector{0, 1});
  std::vector<AffineFlat> one = {a};
  CHECK(intersect_flats(f3, one) == a);
  std::vector<AffineFlat> par = {a, b};
  CHECK_FALSE(intersect_flats(f3, par).has_value());
  std::vector<AffineFlat> self = {a, a};
  CHECK(intersect_flats(f3, self) == a);

  std::vector<Vector> z0 = {Vector{1, 0, 0}, Vector{0, 1, 0}};
  std::vector<Vector> y0 = {Vector{1, 0, 0}, Vector{0, 0, 1}};
  AffineFlat pz(f3, LinearSubspace::span(f3, 3, z0), Vector{0, 0, 0});
  AffineFlat py(f3, LinearSubspace::span(f3, 3, y0), Vector{0, 0, 0});
  std::vector<AffineFlat> two = {pz, py};
  auto x = intersect_flats(f3, two);
  REQUIRE(x.has_value());
  CHECK(x->dim() == 1);
  for (const auto& v : flat_points(f3, *x)) CHECK((v[1] == 0 && v[2] == 0));
}

TEST_CASE("intersection agrees with point-set intersection") {
  FieldSpec f(3);
  Rng rng(11);
  auto planes = grassmannian(3, 2, f);
  auto lines = grassmannian(3, 1, f);
  for (int t = 0; t < 200; ++t) {
    PointCodec codec(f, 3);
    AffineFlat a(f, planes[rng.below(planes.size())], codec.decode(rng.below(27)));
    AffineFlat b(f, t % 2 ? planes[rng.below(planes.size())] : lines[rng.below(lines.size())],
                 codec.decode(rng.below(27)));
    std::set<Vector> pa, common;
    for (const auto& v : flat_points(f, a)) pa.insert(v);
    for (const auto& v : flat_points(f, b))
      if (pa.count(v)) common.insert(v);
    std::vector<AffineFlat> both = {a, b};
    auto x = intersect_flats(f, both);
    if (common.empty()) {
      REQUIRE_FALSE(x.has_value());
    } else {
      REQUIRE(x.has_value());
      auto pts = flat_points(f, *x);
      REQUIRE(std::set<Vector>(pts.begin(), pts.end()) == common);
    }
  }
}

TEST_CASE("join of two planes sharing a line is a 3-flat") {
  FieldSpec f(3);
  std::vector<Vector> a = {Vector{1, 0, 0, 0}, Vector{0, 1, 0, 0}};
  std::vector<Vector> b = {Vector{1, 0, 0, 0}, Vector{0, 0, 1, 0}};
  AffineFlat pa(f, LinearSubspace::span(f, 4, a), Vector{0, 0, 0, 1});
  AffineFlat pb(f, LinearSubspace::span(f, 4, b), Vector{0, 0, 0, 1});
  auto j = join_flats(f, pa, pb);
  CHECK(j.dim() == 3);
  for (const auto& v : flat_points(f, pa)) CHECK(membership(f, v, j));
  for (const auto& v : flat_points(f, pb)) CHECK(membership(f, v, j));
}

TEST_CASE("direction separation") {
  FieldSpec f3(3);
  std::vector<Vector> d = {Vector{1, 1}};
  auto dir = LinearSubspace::span(f3, 2, d);
  std::vector<AffineFlat> par = {AffineFlat(f3, dir, Vector{0, 0}),
                                 AffineFlat(f3, dir, Vector{0, 1})};
  CHECK_FALSE(is_direction_separated(par));
  std::vector<AffineFlat> one = {par[0]};
  CHECK(is_direction_separated(one));
}

TEST_CASE("cosets partition the space") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 4; ++n) {
      if (p == 5 && n == 4) continue;
      FieldSpec f(p);
      PointCodec codec(f, n);
      for (std::size_t k = 0; k <= n; ++k) {
        auto dirs = grassmannian(n, k, f);
        const auto& w = dirs[dirs.size() / 2];
        std::vector<int> hits(codec.size(), 0);
        auto cs = cosets(f, w);
        std::uint64_t expect = 1;
        for (std::size_t i = k; i < n; ++i) expect *= p;
        REQUIRE(cs.size() == expect);
        for (const auto& c : cs)
          for (const auto& v : flat_points(f, c)) ++hits[codec.encode(v)];
        for (int h : hits) REQUIRE(h == 1);
      }
    }
  FieldSpec f5(5);
  PointCodec codec(f5, 4);
  auto w = grassmannian(4, 2, f5)[100];
  std::vector<int> hits(codec.size(), 0);
  for (const auto& c : cosets(f5, w))
    for (const auto& v : flat_points(f5, c)) ++hits[codec.encode(v)];
  for (int h : hits) REQUIRE(h == 1);
}
