#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "kplab/cli.hpp"
#include "kplab/errors.hpp"

using namespace kplab;

namespace {

std::string spec_error_field(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.field();
  }
  return "";
}

std::string csv_body(const ReportTable& t) {
  std::ostringstream os;
  write_csv(os, t, "T");
  std::string s = os.str();
  return s.substr(s.find('\n') + 1);
}

}  // namespace

TEST_CASE("spec parsing") {
  ExperimentSpec s = parse_spec(
      "# a comment\n"
      "experiment=incidence-bound\n"
      "n=4 k=2   # trailing\n"
      "primes=3,5,7\n"
      "seeds=1..3,9\n"
      "p_exp=22/10 q_exp=inf\n");
  CHECK(s.kind == ExperimentKind::incidence_bound);
  CHECK(*s.n == 4);
  CHECK(*s.k == 2);
  CHECK(s.primes == std::vector<std::uint32_t>{3, 5, 7});
  CHECK(s.seeds == std::vector<std::uint64_t>{1, 2, 3, 9});
  CHECK(*s.p_exp == "11/5");
  CHECK(*s.q_exp == "inf");
  CHECK(parse_spec(render(s)) == s);

  ExperimentSpec e = parse_spec("experiment=exponent-identities");
  CHECK(e.kind == ExperimentKind::exponent_identities);
  CHECK(parse_spec(render(e)) == e);
  ExperimentSpec d = parse_spec("experiment=degenerate n=5 k=3 r=1 prime=3 margin=1/2");
  CHECK(*d.margin == mpq_class(1, 2));
  CHECK(parse_spec(render(d)) == d);
}

TEST_CASE("spec errors name the field") {
  CHECK(spec_error_field("n=4 k=2 prime=3") == "experiment");
  CHECK(spec_error_field("experiment=nope n=4 k=2 prime=3") == "experiment");
  CHECK(spec_error_field("experiment=degenerate n=4 k=2 prime=3") == "r");
  CHECK(spec_error_field("experiment=two-ends n=4 prime=3") == "k");
  CHECK(spec_error_field("experiment=two-ends k=2 prime=3") == "n");
  CHECK(spec_error_field("experiment=two-ends n=4 k=2") == "prime");
  CHECK(spec_error_field("experiment=two-ends n=4 k=2 prime=4") == "prime");
  CHECK(spec_error_field("experiment=two-ends n=4 k=2 prime=3 colour=red") == "colour");
  CHECK(spec_error_field("experiment=two-ends n=4 k=2 k=3 prime=3") == "k");
  CHECK(spec_error_field("experiment=maximal-ratio n=4 k=2 prime=3 p_exp=1/x") == "p_exp");
  CHECK(spec_error_field("experiment=maximal-ratio n=4 k=2 prime=3 q_exp=1/2") == "q_exp");
  CHECK(spec_error_field("experiment=nk-set n=4 k=2 prime=3 density=3/2") == "density");
  CHECK(spec_error_field("experiment=nk-set n=4 k=2 prime=3 seed=5..2") == "seed");
  CHECK(spec_error_field("experiment=nk-set n=4 k=9 prime=3") == "k");
  CHECK(spec_error_field("experiment=grassmann-census n=4 prime=3") == "");
}

TEST_CASE("census experiment") {
  ReportTable t = run_experiment(parse_spec("experiment=grassmann-census n=4 prime=3"));
  REQUIRE(t.rows.size() == 5);
  CHECK(*t.cell(2, "enumerated") == "130");
  CHECK(*t.cell(2, "nu_total") == "130/81");
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(*t.cell(i, "match") == "true");
  CHECK_FALSE(t.cell(0, "nope"));
}

TEST_CASE("exponent identities experiment") {
  ReportTable t = run_experiment(parse_spec("experiment=exponent-identities"));
  REQUIRE(t.rows.size() == 49);
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(*t.cell(i, "main_identity") == "true");
  CHECK(*t.cell(0, "alpha") == "0");
  CHECK(*t.cell(0, "chain_verdicts") == "NA");
  CHECK(*t.cell(1, "alpha") == "10/17");
}

TEST_CASE("degenerate experiment") {
  ReportTable t = run_experiment(parse_spec("experiment=degenerate n=4 k=2 r=1 prime=3"));
  REQUIRE(t.rows.size() == 1);
  CHECK(*t.cell(0, "points") == "3");
  CHECK(*t.cell(0, "flats") == "13");
  CHECK(*t.cell(0, "incidences") == "39");
  CHECK(*t.cell(0, "worst_case") == "true");
  CHECK(*t.cell(0, "dominant_term") == "Pi*F^(k-1)");
  CHECK(*t.cell(0, "main_ratio") == "0.494273");
  CHECK(*t.cell(0, "j1_stratum1") == "78");
}

TEST_CASE("json output") {
  ReportTable t = run_experiment(parse_spec("experiment=degenerate n=4 k=2 r=1 prime=3"));
  std::string j = to_json(t);
  CHECK(j.find("\"experiment\"") != std::string::npos);
  CHECK(j.find("\"incidences\"") != std::string::npos);
  CHECK(j.find("\"39\"") != std::string::npos);
}

TEST_CASE("determinism across thread counts") {
  const char* specs[] = {
      "experiment=two-ends n=4 k=2 prime=3 seed=1..4",
      "experiment=refinement-chain n=4 k=2 prime=3 seed=1..4",
      "experiment=simplex-bounds n=3 k=1 prime=3 seed=1..4",
      "experiment=incidence-bound n=4 k=2 prime=3 seed=1..4 p_exp=11/6 q_exp=22/5",
      "experiment=maximal-ratio n=3 k=1 prime=3 p_exp=2 q_exp=3 seed=2",
  };
  for (const char* text : specs) {
    ExperimentSpec s = parse_spec(text);
    RunOptions one, many;
    one.threads = 1;
    many.threads = 4;
    CHECK(csv_body(run_experiment(s, one)) == csv_body(run_experiment(s, many)));
  }
}

TEST_CASE("budget refusal") {
  ExperimentSpec s = parse_spec("experiment=simplex-bounds n=4 k=2 prime=3 seed=1..3");
  RunOptions tiny;
  tiny.budget = 10;
  CHECK(estimate_work(s) > 10);
  CHECK_THROWS_AS(run_experiment(s, tiny), BudgetError);
}

TEST_CASE("csv quoting and header") {
  ReportTable t{"x", {"a", "b"}, {{"1", "p,q"}, {"say \"hi\"", "2"}}};
  std::ostringstream os;
  write_csv(os, t, "2026-01-01T00:00:00Z");
  CHECK(os.str() ==
        "# x generated 2026-01-01T00:00:00Z\n"
        "a,b\n"
        "1,\"p,q\"\n"
        "\"say \"\"hi\"\"\",2\n");
}
