#include "kplab/cli.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kplab/errors.hpp"
#include "kplab/exponents.hpp"
#include "kplab/field.hpp"
#include "kplab/flats.hpp"
#include "kplab/incidence.hpp"
#include "kplab/maximal.hpp"
#include "kplab/simplex.hpp"

namespace kplab {

namespace {

const std::map<std::string, ExperimentKind> kKinds = {
    {"grassmann-census", ExperimentKind::grassmann_census},
    {"degenerate", ExperimentKind::degenerate},
    {"nk-set", ExperimentKind::nk_set},
    {"incidence-bound", ExperimentKind::incidence_bound},
    {"two-ends", ExperimentKind::two_ends},
    {"refinement-chain", ExperimentKind::refinement_chain},
    {"simplex-bounds", ExperimentKind::simplex_bounds},
    {"maximal-ratio", ExperimentKind::maximal_ratio},
    {"exponent-identities", ExperimentKind::exponent_identities},
};

const std::set<std::string> kKeys = {
    "experiment", "n",     "k",      "r",          "prime",  "primes",
    "seed",       "seeds", "density", "p_exp",     "q_exp",  "kmax",
    "directions", "source", "rule",   "margin",    "out"};

std::string canonical_key(const std::string& key) {
  if (key == "prime") return "primes";
  if (key == "seed") return "seeds";
  return key;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw SpecError(key, "not an integer: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

mpq_class parse_rational_field(const std::string& key, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw SpecError(key, "malformed rational '" + text + "'");
  }
}

void check_exponent(const std::string& key, const std::string& text) {
  if (text == "inf") return;
  if (parse_rational_field(key, text) < 1)
    throw SpecError(key, "exponent must be >= 1 or inf");
}

void require(const ExperimentSpec& s, bool has, const std::string& key) {
  if (!has)
    throw SpecError(key, "required by experiment " + to_string(s.kind));
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, k] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

ExperimentSpec parse_spec(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string tok;
    while (words >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0)
        throw SpecError(tok, "expected key=value");
      std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (!kKeys.count(key)) throw SpecError(key, "unknown key");
      if (value.empty()) throw SpecError(key, "empty value");
      key = canonical_key(key);
      if (!kv.emplace(key, value).second) throw SpecError(key, "duplicate key");
    }
  }

  ExperimentSpec s;
  auto it = kv.find("experiment");
  if (it == kv.end()) throw SpecError("experiment", "missing");
  auto kind = kKinds.find(it->second);
  if (kind == kKinds.end())
    throw SpecError("experiment", "unknown experiment '" + it->second + "'");
  s.kind = kind->second;

  for (const auto& [key, value] : kv) {
    if (key == "n") s.n = parse_integer<long>(key, value);
    if (key == "k") s.k = parse_integer<long>(key, value);
    if (key == "r") s.r = parse_integer<long>(key, value);
    if (key == "kmax") s.kmax = parse_integer<long>(key, value);
    if (key == "directions") s.directions = parse_integer<long>(key, value);
    if (key == "primes") {
      for (const auto& part : split(value, ',')) {
        auto p = parse_integer<std::uint64_t>("prime", part);
        if (p > FieldSpec::kMaxPrime || !is_prime(p))
          throw SpecError("prime", part + " is not a prime <= 65536");
        s.primes.push_back(static_cast<std::uint32_t>(p));
      }
    }
    if (key == "seeds") {
      for (const auto& part : split(value, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
          s.seeds.push_back(parse_integer<std::uint64_t>("seed", part));
          continue;
        }
        auto lo = parse_integer<std::uint64_t>("seed", part.substr(0, dots));
        auto hi = parse_integer<std::uint64_t>("seed", part.substr(dots + 2));
        if (hi < lo || hi - lo > 1000000)
          throw SpecError("seed", "bad range '" + part + "'");
        for (auto v = lo; v <= hi; ++v) s.seeds.push_back(v);
      }
    }
    if (key == "density") {
      s.density = parse_rational_field(key, value);
      if (*s.density <= 0 || *s.density > 1)
        throw SpecError(key, "must lie in (0,1]");
    }
    if (key == "margin") {
      s.margin = parse_rational_field(key, value);
      if (*s.margin <= 0) throw SpecError(key, "must be positive");
    }
    if (key == "p_exp" || key == "q_exp") {
      check_exponent(key, value);
      (key == "p_exp" ? s.p_exp : s.q_exp) =
          value == "inf" ? value : parse_rational_field(key, value).get_str();
    }
    if (key == "source") {
      if (value != "corpus" && value != "random" && value != "degenerate")
        throw SpecError(key, "expected corpus, random or degenerate");
      s.source = value;
    }
    if (key == "rule") {
      if (value != "zero" && value != "random")
        throw SpecError(key, "expected zero or random");
      s.rule = value;
    }
    if (key == "out") s.out = value;
  }

  using K = ExperimentKind;
  if (s.kind != K::exponent_identities) {
    require(s, s.n.has_value(), "n");
    require(s, !s.primes.empty(), "prime");
    if (*s.n < 1 || *s.n > 8) throw SpecError("n", "must be in 1..8");
  }
  if (s.kind != K::exponent_identities && s.kind != K::grassmann_census)
    require(s, s.k.has_value(), "k");
  if (s.kind == K::degenerate) require(s, s.r.has_value(), "r");
  if (s.k && s.n && (*s.k < 0 || *s.k > *s.n))
    throw SpecError("k", "must be in 0..n");
  if (s.kind != K::grassmann_census && s.kind != K::exponent_identities &&
      (*s.k < 1 || *s.k >= *s.n))
    throw SpecError("k", "must be in 1..n-1");
  if (s.r && s.k && (*s.r < 1 || *s.r > *s.k))
    throw SpecError("r", "must be in 1..k");
  if (s.kind == K::degenerate && *s.r >= *s.k)
    throw SpecError("r", "degenerate configurations need r < k");
  if (s.kmax && (*s.kmax < 2 || *s.kmax > 1000))
    throw SpecError("kmax", "must be in 2..1000");
  if (s.directions && *s.directions < 1)
    throw SpecError("directions", "must be positive");
  return s;
}

std::string render(const ExperimentSpec& s) {
  std::ostringstream os;
  os << "experiment=" << to_string(s.kind) << "\n";
  if (s.n) os << "n=" << *s.n << "\n";
  if (s.k) os << "k=" << *s.k << "\n";
  if (s.r) os << "r=" << *s.r << "\n";
  auto join = [&](const auto& values) {
    std::string out;
    for (const auto& v : values) out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
  };
  if (!s.primes.empty()) os << "primes=" << join(s.primes) << "\n";
  if (!s.seeds.empty()) os << "seeds=" << join(s.seeds) << "\n";
  if (s.density) os << "density=" << s.density->get_str() << "\n";
  if (s.p_exp) os << "p_exp=" << *s.p_exp << "\n";
  if (s.q_exp) os << "q_exp=" << *s.q_exp << "\n";
  if (s.kmax) os << "kmax=" << *s.kmax << "\n";
  if (s.directions) os << "directions=" << *s.directions << "\n";
  if (s.source) os << "source=" << *s.source << "\n";
  if (s.rule) os << "rule=" << *s.rule << "\n";
  if (s.margin) os << "margin=" << s.margin->get_str() << "\n";
  if (s.out) os << "out=" << *s.out << "\n";
  return os.str();
}

std::optional<std::string> ReportTable::cell(std::size_t row,
                                             const std::string& column) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == column && row < rows.size()) return rows[row][c];
  return std::nullopt;
}

namespace {

using K = ExperimentKind;

double gauss_d(long n, long k, std::uint32_t p) {
  return gaussian_binomial(n, k, p).get_d();
}

std::vector<std::uint64_t> seeds_or_default(const ExperimentSpec& s) {
  return s.seeds.empty() ? std::vector<std::uint64_t>{1} : s.seeds;
}

}  // namespace

double estimate_work(const ExperimentSpec& s) {
  double work = 0;
  const double seeds = static_cast<double>(seeds_or_default(s).size());
  if (s.kind == K::exponent_identities) {
    const double km = static_cast<double>(s.kmax.value_or(50));
    return km * km * km;
  }
  const long n = *s.n;
  for (auto p : s.primes) {
    const double pn = std::pow(double(p), double(n));
    if (s.kind == K::grassmann_census) {
      for (long k = 0; k <= n; ++k)
        if (!s.k || *s.k == k) work += gauss_d(n, k, p) * double(n * n);
      continue;
    }
    const long k = *s.k;
    const double g = gauss_d(n, k, p);
    const double pk = std::pow(double(p), double(k));
    switch (s.kind) {
      case K::degenerate:
        work += gauss_d(n - *s.r, k - *s.r, p) * (pk + gauss_d(n - *s.r, k - *s.r, p));
        break;
      case K::nk_set:
        work += seeds * g * (pk + pn);
        break;
      case K::incidence_bound:
      case K::two_ends:
        work += seeds * g * (pk + pn) * double(n);
        break;
      case K::refinement_chain:
        work += seeds * g * (pk * double(n) + g);
        break;
      case K::simplex_bounds:
        work += seeds * g * std::pow(pk, double(k + 1));
        break;
      case K::maximal_ratio:
        work += (double(n) * std::log2(double(p)) + double(k) + 4) * g * pn;
        break;
      default:
        break;
    }
  }
  return work;
}

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(const mpq_class& v) { return v.get_str(); }
std::string str(bool v) { return v ? "true" : "false"; }
std::string sig(const Real& v) { return to_sig6(v); }
std::string sig(const std::optional<Magnitude>& m) {
  return m ? to_sig6(m->value()) : "NA";
}
std::string sig(const std::optional<Real>& m) { return m ? to_sig6(*m) : "NA"; }
const std::string kNA = "NA";

Configuration make_config(const ExperimentSpec& s, const FieldSpec& f,
                          std::uint64_t seed) {
  const std::size_t n = *s.n, k = *s.k;
  const std::string source = s.source.value_or("corpus");
  if (source == "degenerate") return gen_degenerate(n, k, s.r.value_or(1), f);
  if (source == "random") {
    const std::size_t g = gaussian_binomial(n, k, f.p()).get_ui();
    const std::size_t dirs =
        s.directions ? static_cast<std::size_t>(*s.directions) : g;
    if (dirs > g) throw SpecError("directions", "exceeds |G(n,k)|");
    Configuration base = gen_random_direction_separated(n, k, dirs, f, seed);
    return base.with_points(gen_point_cloud(
        n, f, s.density.value_or(mpq_class(1, 2)), derive_seed(seed, 1)));
  }
  return gen_corpus_config(n, k, f, seed);
}

std::vector<std::uint64_t> config_seeds(const ExperimentSpec& s) {
  if (s.source.value_or("corpus") == "degenerate") return {0};
  return seeds_or_default(s);
}

void census(const ExperimentSpec& s, ReportTable& t) {
  t.header = {"n", "k", "p", "enumerated", "gaussian_binomial", "match", "nu_total"};
  const long n = *s.n;
  for (auto p : s.primes) {
    FieldSpec f(p);
    for (long k = 0; k <= n; ++k) {
      if (s.k && *s.k != k) continue;
      std::uint64_t count = 0;
      auto stream = enumerate_grassmannian(n, k, f);
      while (stream.next()) ++count;
      mpz_class g = gaussian_binomial(n, k, p);
      t.rows.push_back({str(std::uint64_t(n)), str(std::uint64_t(k)), str(std::uint64_t(p)),
                        str(count), str(g), str(g == count), str(nu_total(n, k, f))});
    }
  }
}

struct MainColumns {
  std::string dominant = kNA, ratio = kNA, le_bound = kNA;
};

MainColumns main_columns(const Configuration& c, const IncidenceIndex& idx,
                         const mpq_class& bound) {
  MainColumns m;
  if (c.k() < 2 || c.k() + 2 > c.n() || idx.total == 0) return m;
  MainBoundReport rep = check_main_bound(c, idx);
  m.dominant = MainBoundReport::term_name(rep.dominant);
  m.ratio = sig(rep.ratio);
  m.le_bound = str(rep.ratio_at_most(bound));
  return m;
}

void degenerate(const ExperimentSpec& s, const RunOptions& o, ReportTable& t) {
  t.header = {"n", "k", "r", "p", "points", "flats", "incidences",
              "points_times_flats", "worst_case", "flats_order_of_magnitude",
              "direction_separated", "cs_tuples", "cs_equality", "j1_total",
              "j1_stratum0", "j1_stratum1", "dominant_term", "main_ratio",
              "main_ratio_le_1", "h2_ratio"};
  const long n = *s.n, k = *s.k, r = *s.r;
  for (auto p : s.primes) {
    FieldSpec f(p);
    Configuration c = gen_degenerate(n, k, r, f);
    IncidenceIndex idx = incidence_count(c, o.threads);
    const std::uint64_t prod = c.points().size() * c.flats().size();
    HolderReport cs = cs_holder_count(c, idx, 2);
    TwoEndsReport j1 = jr_decompose(c, idx, 1, o.threads);
    MainColumns m = main_columns(c, idx, 1);
    HypothesisResult h2 = hypothesis_check(c, idx, Hypothesis::H2, 1);
    t.rows.push_back({str(std::uint64_t(n)), str(std::uint64_t(k)), str(std::uint64_t(r)),
                      str(std::uint64_t(p)), str(std::uint64_t(c.points().size())),
                      str(std::uint64_t(c.flats().size())), str(idx.total), str(prod),
                      str(idx.total == prod),
                      str(pow_mpz(mpz_class(p), (k - r) * (n - k))),
                      str(c.direction_separated()), str(cs.tuples), str(cs.equality),
                      str(j1.total), str(j1.strata[0]), str(j1.strata[1]),
                      m.dominant, m.ratio, m.le_bound, sig(h2.ratio)});
  }
}

void nk_set(const ExperimentSpec& s, ReportTable& t) {
  t.header = {"n", "k", "p", "rule", "seed", "size", "bound_exponent",
              "size_over_bound", "lower_bound_holds", "nk_property"};
  const long n = *s.n, k = *s.k;
  const std::string rule = s.rule.value_or("random");
  const mpq_class e(k * n + k + 1, k + 1);
  for (auto p : s.primes) {
    FieldSpec f(p);
    std::vector<std::optional<std::uint64_t>> runs;
    if (rule == "zero")
      runs.push_back(std::nullopt);
    else
      for (auto sd : seeds_or_default(s)) runs.push_back(sd);
    for (const auto& sd : runs) {
      TranslateRule tr;
      if (sd) tr = {TranslateRule::Kind::random, *sd};
      PointSet E = gen_nk_set(n, k, f, tr);
      const mpz_class size(static_cast<unsigned long>(E.size()));
      // 8^{k+1} |E|^{k+1} >= p^{kn+k+1}
      const bool holds = pow_mpz(8 * size, k + 1) >= pow_mpz(mpz_class(p), k * n + k + 1);
      Magnitude ratio = Magnitude::of(size) / Magnitude::power(mpz_class(p), e);
      t.rows.push_back({str(std::uint64_t(n)), str(std::uint64_t(k)), str(std::uint64_t(p)),
                        rule, sd ? str(*sd) : kNA, str(size), str(e),
                        sig(ratio.value()), str(holds),
                        str(has_flat_in_every_direction(E, k, f))});
    }
  }
}

void incidence_bound(const ExperimentSpec& s, const RunOptions& o, ReportTable& t) {
  t.header = {"p", "seed", "points", "flats", "incidences", "direction_separated",
              "refined_flats", "refined_incidences", "bucket_level", "dominant_term",
              "main_ratio", "main_ratio_le_8", "holder_m2", "holder_m3", "holder_m4",
              "p_exp", "q_exp", "max_ic_ratio", "max_ic_chain", "violation_file"};
  const long n = *s.n, k = *s.k;
  mpq_class pe = 1, qe = 1;
  if (k >= 2 && k <= n - 2) {
    auto te = theorem_exponents(n, k);
    pe = te.p;
    qe = te.q;
  }
  if (s.p_exp && *s.p_exp != "inf") pe = parse_rational(*s.p_exp);
  if (s.q_exp && *s.q_exp != "inf") qe = parse_rational(*s.q_exp);
  for (auto p : s.primes) {
    FieldSpec f(p);
    for (auto seed : config_seeds(s)) {
      Configuration c = make_config(s, f, seed);
      IncidenceIndex idx = incidence_count(c, o.threads);
      std::vector<std::string> row = {
          str(std::uint64_t(p)), str(seed), str(std::uint64_t(c.points().size())),
          str(std::uint64_t(c.flats().size())), str(idx.total),
          str(c.direction_separated())};
      if (idx.total == 0) {
        row.insert(row.end(), {"0", "0", kNA, kNA, kNA, kNA});
      } else {
        RefinedConfig ref = refine_dyadic(c, idx);
        MainColumns m = main_columns(c, idx, 8);
        row.insert(row.end(), {str(std::uint64_t(ref.refined.flats().size())),
                               str(ref.refined_total), str(std::uint64_t(ref.bucket_level)),
                               m.dominant, m.ratio, m.le_bound});
        if (m.le_bound == "false" && s.out) {
          std::string path = *s.out + ".violation-p" + str(std::uint64_t(p)) +
                             "-seed" + str(seed) + ".json";
          std::ofstream(path) << serialize(c) << "\n";
        }
      }
      for (int mm = 2; mm <= 4; ++mm) row.push_back(str(cs_holder_count(c, idx, mm).holds));
      row.push_back(str(pe));
      row.push_back(str(qe));
      if (c.direction_separated()) {
        MaxIcReport mic = check_max_ic(c, idx, pe, qe);
        row.push_back(sig(mic.ratio));
        row.push_back(str(mic.chain_holds));
      } else {
        row.insert(row.end(), {kNA, kNA});
      }
      row.push_back(row[11] == "false" && s.out
                        ? *s.out + ".violation-p" + str(std::uint64_t(p)) + "-seed" +
                              str(seed) + ".json"
                        : kNA);
      t.rows.push_back(std::move(row));
    }
  }
}

void two_ends(const ExperimentSpec& s, const RunOptions& o, ReportTable& t) {
  t.header = {"p", "seed", "r", "incidences", "j_total", "strata", "partition_ok",
              "stratum0_is_incidences"};
  const long k = *s.k;
  for (auto p : s.primes) {
    FieldSpec f(p);
    for (auto seed : config_seeds(s)) {
      Configuration c = make_config(s, f, seed);
      IncidenceIndex idx = incidence_count(c, o.threads);
      for (long r = 1; r <= k; ++r) {
        if (s.r && *s.r != r) continue;
        TwoEndsReport rep = jr_decompose(c, idx, r, o.threads);
        mpz_class sum = 0;
        std::string strata;
        for (const auto& v : rep.strata) {
          sum += v;
          strata += (strata.empty() ? "" : ";") + v.get_str();
        }
        t.rows.push_back({str(std::uint64_t(p)), str(seed), str(std::uint64_t(r)),
                          str(idx.total), str(rep.total), strata, str(sum == rep.total),
                          str(rep.strata[0] == idx.total)});
      }
    }
  }
}

void refinement_chain(const ExperimentSpec& s, const RunOptions& o, ReportTable& t) {
  t.header = {"p", "seed", "points", "refined_flats", "refined_incidences",
              "unrestricted_tuples", "holder_ok", "spine_threshold", "spines",
              "ik_prime", "ik", "discarded", "discard_estimate", "discard_ok",
              "vk_prime", "vk", "cauchy_schwarz_ok", "vkp", "vk_del", "d_pairs",
              "d_bucket_level", "d_mass", "d_threshold", "monotone", "h1_ratio",
              "h1_holds", "h2_ratio", "h2_holds"};
  const mpq_class margin = s.margin.value_or(10);
  for (auto p : s.primes) {
    FieldSpec f(p);
    for (auto seed : config_seeds(s)) {
      Configuration c = make_config(s, f, seed);
      IncidenceIndex idx = incidence_count(c, o.threads);
      if (idx.total == 0) {
        std::vector<std::string> row(t.header.size(), kNA);
        row[0] = str(std::uint64_t(p));
        row[1] = str(seed);
        row[2] = str(std::uint64_t(c.points().size()));
        row[3] = "0";
        row[4] = "0";
        t.rows.push_back(std::move(row));
        continue;
      }
      RefinedConfig ref = refine_dyadic(c, idx);
      ChainOptions copts;
      copts.threads = o.threads;
      RefinementChainReport r = build_refinement_chain(ref, copts);
      HypothesisResult h1 = hypothesis_check(c, idx, Hypothesis::H1, margin);
      HypothesisResult h2 = hypothesis_check(c, idx, Hypothesis::H2, margin);
      const bool d_done = r.d_threshold.has_value() || r.f_total == 0;
      t.rows.push_back(
          {str(std::uint64_t(p)), str(seed), str(r.points), str(r.refined_flats),
           str(r.refined_incidences), str(r.unrestricted_tuples), str(r.holder_bound_holds),
           str(r.spine_threshold), str(std::uint64_t(r.spines.size())), str(r.ik_prime),
           str(r.ik), str(r.discarded), str(r.discard_estimate),
           str(r.discard_within_estimate), str(r.vk_prime), str(r.vk),
           str(r.cauchy_schwarz_holds), str(r.vkp), str(r.vk_del),
           d_done ? str(r.d_pairs) : kNA,
           r.d_bucket_level >= 0 ? str(std::uint64_t(r.d_bucket_level)) : kNA,
           d_done ? str(r.d_mass) : kNA, r.d_threshold ? str(*r.d_threshold) : kNA,
           str(r.monotone()), sig(h1.ratio), str(h1.holds), sig(h2.ratio),
           str(h2.holds)});
    }
  }
}

void simplex_bounds(const ExperimentSpec& s, const RunOptions& o, ReportTable& t) {
  t.header = {"p", "seed", "points", "flats", "refined_flats", "refined_incidences",
              "simplices", "simplices_ordered", "simplices_full", "vk", "vk_del",
              "upper_ratio", "upper_holds", "lower_ratio", "heuristic_ratio",
              "lambda_max"};
  SimplexOptions so;
  so.threads = o.threads;
  so.budget = o.budget;
  for (auto p : s.primes) {
    FieldSpec f(p);
    for (auto seed : config_seeds(s)) {
      Configuration c = make_config(s, f, seed);
      SimplexBoundReport r = simplex_bound_report(c, so);
      t.rows.push_back({str(std::uint64_t(p)), str(seed), str(r.points), str(r.flats),
                        str(r.refined_flats), str(r.refined_incidences), str(r.simplices),
                        str(r.simplices_ordered), str(r.simplices_full), str(r.vk),
                        str(r.vk_del), sig(r.upper_ratio), str(r.upper_holds),
                        sig(r.lower_ratio), sig(r.heuristic_ratio),
                        r.lambda.computed ? str(r.lambda.max_flats) : kNA});
    }
  }
}

void maximal_ratio(const ExperimentSpec& s, const RunOptions& o, ReportTable& t) {
  t.header = {"p", "p_exp", "q_exp", "candidate", "ratio", "best", "nu_total"};
  const long n = *s.n, k = *s.k;
  LebesgueExponent pe = LebesgueExponent::of(mpq_class(n, k));
  if (k >= 2 && k <= n - 2) pe = LebesgueExponent::of(theorem_exponents(n, k).p);
  if (s.p_exp) pe = LebesgueExponent::parse(*s.p_exp);
  LebesgueExponent qe = LebesgueExponent::inf();
  if (!pe.infinite && pe.value > 1)
    qe = LebesgueExponent::of((n - k) * pe.value / (pe.value - 1));
  if (s.q_exp) qe = LebesgueExponent::parse(*s.q_exp);
  const std::uint64_t seed = seeds_or_default(s).front();
  const std::vector<Candidate> all = {Candidate::constant, Candidate::point,
                                      Candidate::flats, Candidate::random,
                                      Candidate::degenerate};
  for (auto p : s.primes) {
    FieldSpec f(p);
    SearchResult res = empirical_norm_search(n, k, f, pe, qe, all, seed, o.threads);
    const std::string nu = str(nu_total(n, k, f));
    for (const auto& [name, ratio] : res.tried)
      t.rows.push_back({str(std::uint64_t(p)), pe.str(), qe.str(), name, sig(ratio),
                        str(name == res.best_name), nu});
  }
}

void exponent_identities(const ExperimentSpec& s, ReportTable& t) {
  t.header = {"k", "alpha", "main_identity", "chain_verdicts"};
  const long kmax = s.kmax.value_or(50);
  for (long k = 2; k <= kmax; ++k) {
    std::string chain;
    for (long r = 1; r <= k - 2; ++r)
      chain += (chain.empty() ? "" : ";") + ("r" + std::to_string(r) + ":") +
               to_string(verify_identity_chain(k, r));
    t.rows.push_back({str(std::uint64_t(k)), str(alpha(k)),
                      str(verify_identity_main(k)), chain.empty() ? kNA : chain});
  }
}

}  // namespace

ReportTable run_experiment(const ExperimentSpec& spec, const RunOptions& opts) {
  const double work = estimate_work(spec);
  if (work > opts.budget)
    throw BudgetError("estimated work " + to_sig6(work) + " exceeds budget " +
                          to_sig6(opts.budget), work);
  ReportTable t;
  t.experiment = to_string(spec.kind);
  switch (spec.kind) {
    case K::grassmann_census: census(spec, t); break;
    case K::degenerate: degenerate(spec, opts, t); break;
    case K::nk_set: nk_set(spec, t); break;
    case K::incidence_bound: incidence_bound(spec, opts, t); break;
    case K::two_ends: two_ends(spec, opts, t); break;
    case K::refinement_chain: refinement_chain(spec, opts, t); break;
    case K::simplex_bounds: simplex_bounds(spec, opts, t); break;
    case K::maximal_ratio: maximal_ratio(spec, opts, t); break;
    case K::exponent_identities: exponent_identities(spec, t); break;
  }
  return t;
}

void write_csv(std::ostream& os, const ReportTable& table,
               const std::string& timestamp) {
  os << "# " << table.experiment << " generated " << timestamp << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
      if (!quote) {
        os << cells[i];
        continue;
      }
      os << '"';
      for (char ch : cells[i]) os << (ch == '"' ? "\"\"" : std::string(1, ch));
      os << '"';
    }
    os << "\n";
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

std::string to_json(const ReportTable& table) {
  nlohmann::ordered_json doc;
  doc["experiment"] = table.experiment;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < table.header.size(); ++c) obj[table.header[c]] = r[c];
    doc["rows"].push_back(obj);
  }
  return doc.dump(1);
}

std::string write_outputs(const std::string& path, const ReportTable& table,
                          const std::string& timestamp) {
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot write " + path);
  write_csv(csv, table, timestamp);
  const std::string jpath = path + ".json";
  std::ofstream json(jpath);
  if (!json) throw std::runtime_error("cannot write " + jpath);
  json << to_json(table) << "\n";
  return jpath;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace kplab
