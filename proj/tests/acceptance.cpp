// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "kplab/cli.hpp"
#include "kplab/exponents.hpp"
#include "kplab/flats.hpp"
#include "kplab/incidence.hpp"
#include "kplab/maximal.hpp"
#include "kplab/simplex.hpp"

using namespace kplab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id, name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string str(const mpz_class& v) { return v.get_str(); }

Outcome census() {
  Outcome o;
  int checked = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FieldSpec f(p);
    for (long n = 1; n <= 4; ++n)
      for (long k = 0; k <= n; ++k) {
        GrassmannianStream s(f, n, k);
        std::uint64_t count = 0;
        while (s.next()) ++count;
        ++checked;
        if (gaussian_binomial(n, k, p) != count) {
          o.pass = false;
          o.detail += " mismatch(" + std::to_string(n) + "," + std::to_string(k) + "," +
                      std::to_string(p) + ")";
        }
      }
  }
  GrassmannianStream s(FieldSpec(3), 5, 2);
  std::uint64_t count = 0;
  while (s.next()) ++count;
  o.pass = o.pass && count == 1210 && gaussian_binomial(5, 2, 3) == 1210;
  o.detail = std::to_string(checked) + " triples, |G(5,2)| over F_3 = " +
             std::to_string(count) + o.detail;
  return o;
}

Outcome degenerate_worst_case() {
  Outcome o;
  const std::size_t cases[][3] = {{4, 2, 3}, {4, 2, 5}, {5, 2, 3}, {5, 3, 3}};
  for (const auto& c : cases) {
    Configuration d = gen_degenerate(c[0], c[1], 1, FieldSpec(std::uint32_t(c[2])));
    const std::uint64_t i = incidence_count(d).total;
    const std::uint64_t pp = d.points().size() * d.flats().size();
    o.pass = o.pass && i == pp;
    o.detail += "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                std::to_string(c[2]) + "):" + std::to_string(i) + "=" + std::to_string(pp) + " ";
  }
  return o;
}

const std::size_t kCorpusShapes[][3] = {{3, 1, 3}, {4, 2, 3}};

Outcome holder_corpus() {
  Outcome o;
  std::uint64_t checks = 0, violations = 0;
  for (const auto& sh : kCorpusShapes)
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Configuration c = gen_corpus_config(sh[0], sh[1], FieldSpec(std::uint32_t(sh[2])), seed);
      IncidenceIndex idx = incidence_count(c);
      for (int m = 2; m <= 4; ++m) {
        ++checks;
        if (!cs_holder_count(c, idx, m).holds) ++violations;
      }
    }
  o.pass = violations == 0;
  o.detail = std::to_string(checks) + " inequalities, " + std::to_string(violations) + " violations";
  return o;
}

Outcome two_ends_corpus() {
  Outcome o;
  std::uint64_t checks = 0, bad = 0;
  for (const auto& sh : kCorpusShapes)
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Configuration c = gen_corpus_config(sh[0], sh[1], FieldSpec(std::uint32_t(sh[2])), seed);
      IncidenceIndex idx = incidence_count(c);
      // r ranges over {1, 2} intersected with 1..k
      for (int r = 1; r <= 2 && r <= int(sh[1]); ++r) {
        TwoEndsReport rep = jr_decompose(c, idx, r);
        mpz_class sum = 0;
        for (const auto& v : rep.strata) sum += v;
        ++checks;
        if (sum != rep.total || rep.strata[0] != idx.total) ++bad;
      }
    }
  o.pass = bad == 0;
  o.detail = std::to_string(checks) + " decompositions, " + std::to_string(bad) + " failures";
  return o;
}

Outcome simplex_oracle() {
  Outcome o;
  const std::size_t shapes[][3] = {{3, 1, 2}, {3, 1, 3}, {4, 2, 3}};
  std::uint64_t configs = 0, bad = 0;
  mpz_class total = 0;
  for (const auto& sh : shapes)
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      Configuration c = gen_hull_family(sh[0], sh[1], FieldSpec(std::uint32_t(sh[2])), 20, seed);
      const mpz_class fast = count_simplices(c);
      ++configs;
      total += fast;
      if (c.points().size() > 20 || fast != count_simplices_bruteforce(c)) ++bad;
    }
  FieldSpec f2(2);
  std::vector<AffineFlat> lines;
  for (const auto& w : grassmannian(2, 1, f2))
    for (const auto& c : cosets(f2, w)) lines.push_back(c);
  Configuration tri(f2, 2, 1, gen_point_cloud(2, f2, 1, 0), lines);
  const mpz_class t = count_simplices(tri);
  o.pass = bad == 0 && t == 4;
  o.detail = std::to_string(configs) + " configs (" + str(total) + " simplices), " +
             std::to_string(bad) + " mismatches, triangle case " + str(t);
  return o;
}

Outcome exponent_identities() {
  Outcome o;
  for (long k = 2; k <= 50; ++k)
    if (!verify_identity_main(k)) {
      o.pass = false;
      o.detail += " main(k=" + std::to_string(k) + ")";
    }
  int pairs = 0;
  for (long n = 4; n <= 12; ++n)
    for (long k = 2; k <= n - 2; ++k) {
      BoundExpr m = main_term_abc(k);
      auto d = max_ick_derive(m.a, m.b, m.c, n, k);
      TheoremExponents t = theorem_exponents(n, k);
      mpq_class printed(k * n + k + 1, k * (k + 1));
      printed.canonicalize();
      ++pairs;
      const auto* e = std::get_if<MaxIckExponents>(&d);
      if (!e || e->p != t.p || e->q != t.q ||
          t.p != printed || e->q != mpq_class((n - k) * printed / (printed - 1))) {
        o.pass = false;
        o.detail += " derive(" + std::to_string(n) + "," + std::to_string(k) + ")";
      }
    }
  const bool a = alpha(2) == 0 && alpha(3) == mpq_class(10, 17);
  o.pass = o.pass && a;
  o.detail = "k=2..50 main identity, " + std::to_string(pairs) +
             " (n,k) exponent pairs, alpha(3)=" + alpha(3).get_str() + o.detail;
  return o;
}

Outcome chain_audit() {
  Outcome o;
  const ChainVerdict v32 = verify_identity_chain(3, 2);
  std::optional<ChainVerdict> common;
  bool consistent = true;
  for (long k = 2; k <= 10; ++k)
    for (long r = 1; r <= k - 2; ++r) {
      const ChainVerdict v = verify_identity_chain(k, r);
      if (!common) common = v;
      consistent = consistent && v == *common;
    }
  o.pass = v32 == ChainVerdict::holds_with_corrected_denominator && consistent &&
           common == ChainVerdict::holds_with_corrected_denominator;
  o.detail = "(3,2): " + to_string(v32) + "; 2<=k<=10, 1<=r<=k-2: " +
             (consistent ? to_string(*common) : std::string("inconsistent"));
  return o;
}

Outcome maximal_exactness() {
  Outcome o;
  FieldSpec f3(3);
  GrassmannFunction t = apply_maximal(GridFunction::constant(f3, 4, 1), 2);
  bool flat = t.directions.size() == 130;
  for (const auto& v : t.values) flat = flat && v == 9;
  o.pass = flat;
  o.detail = std::string("T1 = 9 on G(4,2): ") + (flat ? "yes" : "no");
  const TheoremExponents th = theorem_exponents(4, 2);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    FieldSpec f(p);
    GridFunction one = GridFunction::constant(f, 4, 1);
    const mpq_class nu = nu_total(4, 2, f);
    for (const auto& q : {LebesgueExponent::of(1), LebesgueExponent::of(th.q)}) {
      OperatorRatio r = operator_ratio(one, LebesgueExponent::of(2), q, 2);
      // with p_exp = n/k the powers of p cancel, leaving nu^{1/q}
      const Magnitude expect = Magnitude::of(nu).pow(1 / q.value);
      const bool exact = r.ratio.exact && *r.ratio.exact == expect;
      const bool range = Magnitude::of(mpq_class(1, 2)) <= expect &&
                         expect <= Magnitude::of(mpz_class(2));
      o.pass = o.pass && exact && range;
      if (!exact || !range) o.detail += " p=" + std::to_string(p) + ",q=" + q.str() + " off";
    }
  }
  o.detail += "; ratio(f=1, p_exp=2) = nu^(1/q) exactly for p in {3,5,7}";
  return o;
}

Outcome main_bound_desk_check() {
  Outcome o;
  const std::filesystem::path dir = "acceptance_violations";
  std::map<std::uint32_t, Real> max_ratio;
  std::uint64_t configs = 0, violations = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    FieldSpec f(p);
    Real best = 0;
    auto examine = [&](const Configuration& c, const std::string& label) {
      IncidenceIndex idx = incidence_count(c);
      if (idx.total == 0) return;
      MainBoundReport r = check_main_bound(c, idx);
      ++configs;
      best = std::max(best, *r.ratio);
      if (!r.ratio_at_most(8)) {
        ++violations;
        std::filesystem::create_directories(dir);
        std::ofstream(dir / ("p" + std::to_string(p) + "-" + label + ".json")) << serialize(c) << "\n";
      }
    };
    for (std::uint64_t seed = 1; seed <= 200; ++seed)
      examine(gen_corpus_config(4, 2, f, seed), "seed" + std::to_string(seed));
    examine(gen_degenerate(4, 2, 1, f), "degenerate");
    max_ratio[p] = best;
  }
  const bool growth = max_ratio[7] <= 2 * max_ratio[3];
  o.pass = violations == 0 && growth;
  std::ostringstream os;
  os.precision(6);
  os << configs << " configs, " << violations << " ratios above 8; max ratio p=3 "
     << max_ratio[3] << ", p=5 " << max_ratio[5] << ", p=7 " << max_ratio[7];
  if (violations) os << "; serialized to " << dir.string();
  o.detail = os.str();
  return o;
}

Outcome nk_lower_bound() {
  Outcome o;
  std::uint64_t runs = 0;
  std::ostringstream os;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    FieldSpec f(p);
    std::uint64_t smallest = ~std::uint64_t{0};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      PointSet e = gen_nk_set(4, 2, f, {TranslateRule::Kind::random, seed});
      const mpz_class size = static_cast<unsigned long>(e.size());
      mpz_class pp;
      mpz_ui_pow_ui(pp.get_mpz_t(), p, 11);
      ++runs;
      if (!(512 * size * size * size >= pp)) o.pass = false;
      smallest = std::min<std::uint64_t>(smallest, e.size());
    }
    os << " p=" << p << " min|E|=" << smallest;
  }
  o.detail = std::to_string(runs) + " runs, 8^3|E|^3 >= p^11;" + os.str();
  return o;
}

std::string csv_body(const ReportTable& t) {
  std::ostringstream os;
  write_csv(os, t, "");
  std::string s = os.str();
  return s.substr(s.find('\n') + 1);
}

Outcome determinism() {
  Outcome o;
  const char* specs[] = {
      "experiment=grassmann-census n=4 primes=2,3,5",
      "experiment=degenerate n=5 k=3 r=1 primes=2,3",
      "experiment=nk-set n=4 k=2 primes=3,5 rule=random seeds=1..3",
      "experiment=incidence-bound n=4 k=2 primes=3,5 seeds=1..10 p_exp=11/6 q_exp=22/5",
      "experiment=two-ends n=4 k=2 prime=3 seeds=1..10",
      "experiment=refinement-chain n=4 k=2 primes=3,5 seeds=1..10",
      "experiment=simplex-bounds n=3 k=1 primes=3,5 seeds=1..10",
      "experiment=maximal-ratio n=4 k=2 prime=3 p_exp=11/6 q_exp=22/5 seeds=1",
      "experiment=exponent-identities kmax=20",
  };
  int same = 0, total = 0;
  for (const char* text : specs) {
    ExperimentSpec s = parse_spec(text);
    RunOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const std::string a = csv_body(run_experiment(s, one));
    const std::string b = csv_body(run_experiment(s, four));
    const std::string c = csv_body(run_experiment(s, four));
    ++total;
    if (a == b && b == c && !a.empty()) {
      ++same;
    } else {
      o.pass = false;
      o.detail += " " + to_string(s.kind) + " differs;";
    }
  }
  o.detail = std::to_string(same) + "/" + std::to_string(total) +
             " experiments byte-identical at 1 and 4 threads" + o.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "Grassmannian census", 10, census},
      {"2", "degenerate worst case |I| = |P||Pi|", 5, degenerate_worst_case},
      {"3", "Cauchy-Schwarz / Hoelder on the corpus", 60, holder_corpus},
      {"4", "two-ends decomposition", 60, two_ends_corpus},
      {"5", "simplex count vs brute force", 120, simplex_oracle},
      {"6", "exponent identities", 1, exponent_identities},
      {"7", "chain identity audit", 1, chain_audit},
      {"8", "maximal operator exactness", 30, maximal_exactness},
      {"9", "main bound desk check", 600, main_bound_desk_check},
      {"10", "(n,k)-set lower bound", 120, nk_lower_bound},
      {"11", "determinism across thread counts", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s  C%-2s %-42s %7.2fs (limit %gs%s)  %s\n", pass ? "PASS" : "FAIL",
                c.id.c_str(), c.name.c_str(), secs, c.limit_seconds,
                in_time ? "" : ", exceeded", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
