#include <functional>
#include <ostream>

#include "kplab/cli.hpp"
#include "kplab/flats.hpp"
#include "kplab/parallel.hpp"
#include "kplab/incidence.hpp"
#include "kplab/maximal.hpp"
#include "kplab/simplex.hpp"

namespace kplab {

namespace {

bool census_check() {
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t k = 0; k <= n; ++k) {
        FieldSpec f(p);
        std::uint64_t count = 0;
        auto s = enumerate_grassmannian(n, k, f);
        while (s.next()) ++count;
        if (gaussian_binomial(n, k, p) != count) return false;
      }
  return true;
}

bool simplex_check() {
  const std::size_t shapes[][3] = {{3, 1, 3}, {4, 2, 3}};
  for (const auto& sh : shapes)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      FieldSpec f(static_cast<std::uint32_t>(sh[2]));
      Configuration c = gen_hull_family(sh[0], sh[1], f, 12, seed);
      if (count_simplices(c) != count_simplices_bruteforce(c)) return false;
    }
  return true;
}

// Strata by classifying every (r+1)-tuple on every flat.
std::vector<mpz_class> strata_by_tuples(const Configuration& c,
                                        const IncidenceIndex& idx, int r) {
  std::vector<mpz_class> out(r + 1, 0);
  const auto& pts = c.points().points();
  for (const auto& on : idx.flat_points) {
    std::vector<std::size_t> pos(r + 1, 0);
    if (on.empty()) continue;
    while (true) {
      std::vector<Vector> tuple;
      for (auto i : pos) tuple.push_back(pts[on[i]]);
      out[affine_rank(c.field(), tuple)] += 1;
      std::size_t d = 0;
      while (d <= static_cast<std::size_t>(r) && ++pos[d] == on.size()) pos[d++] = 0;
      if (d > static_cast<std::size_t>(r)) break;
    }
  }
  return out;
}

bool two_ends_check() {
  FieldSpec f(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Configuration c = gen_corpus_config(3, 2, f, seed);
    IncidenceIndex idx = incidence_count(c);
    for (int r = 1; r <= 2; ++r) {
      TwoEndsReport rep = jr_decompose(c, idx, r);
      if (rep.strata != strata_by_tuples(c, idx, r)) return false;
      if (rep.strata[0] != idx.total) return false;
    }
  }
  return true;
}

bool maximal_check() {
  FieldSpec f(3);
  Rng rng(7);
  GridFunction g(f, 3);
  for (std::uint64_t code = 0; code < g.codec().size(); ++code)
    g.set(g.codec().decode(code), mpq_class(rng.below(5), 1 + rng.below(3)));
  GrassmannFunction t = apply_maximal(g, 1);
  for (std::size_t d = 0; d < t.directions.size(); ++d)
    if (t.values[d] != maximal_at_by_points(g, t.directions[d])) return false;
  return true;
}

}  // namespace

bool selftest(std::ostream& os, unsigned threads) {
  if (threads) set_default_threads(threads);
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"grassmannian count equals gaussian binomial", census_check},
      {"fast simplex count equals brute force", simplex_check},
      {"two-ends strata equal tuple classification", two_ends_check},
      {"coset maximum equals sup over all points", maximal_check},
  };
  bool all = true;
  for (const auto& [name, check] : checks) {
    const bool ok = check();
    all = all && ok;
    os << (ok ? "PASS " : "FAIL ") << name << "\n";
  }
  return all;
}

}  // namespace kplab
