#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kplab/cli.hpp"
#include "kplab/errors.hpp"
#include "kplab/parallel.hpp"

namespace {

int emit(const kplab::ReportTable& table, const std::optional<std::string>& out,
         bool json) {
  const std::string stamp = kplab::utc_timestamp();
  if (out) {
    const std::string jpath = kplab::write_outputs(*out, table, stamp);
    std::cerr << "wrote " << *out << " and " << jpath << "\n";
  }
  if (json)
    std::cout << kplab::to_json(table) << "\n";
  else if (!out)
    kplab::write_csv(std::cout, table, stamp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kplab: finite-field Kakeya maximal function and incidence lab"};
  app.require_subcommand(1);
  unsigned threads = 0;
  double budget = 1e11;
  bool json = false;
  std::optional<std::uint64_t> seed;
  app.add_option("--threads", threads, "worker threads (default: all cores)");
  app.add_option("--budget", budget, "work guard in elementary operations");
  app.add_flag("--json", json, "print JSON instead of CSV");
  app.add_option("--seed", seed, "override the spec's seeds with one seed");

  auto* run = app.add_subcommand("run", "run an experiment spec file");
  std::string specfile;
  run->add_option("specfile", specfile)->required();

  auto* census = app.add_subcommand("census", "count G(n,k) by enumeration");
  long n = 0, k = 0;
  std::uint32_t p = 2;
  census->add_option("-n", n)->required();
  census->add_option("-k", k)->required();
  census->add_option("-p", p)->required();

  auto* verify = app.add_subcommand("verify-exponents", "exact exponent identities");
  long kmax = 50;
  verify->add_option("--kmax", kmax);

  auto* self = app.add_subcommand("selftest", "oracle-equivalence checks");

  CLI11_PARSE(app, argc, argv);
  if (threads) kplab::set_default_threads(threads);
  kplab::RunOptions opts{threads, budget};

  try {
    kplab::ExperimentSpec spec;
    if (*run) {
      std::ifstream in(specfile);
      if (!in) throw kplab::SpecError("specfile", "cannot open " + specfile);
      std::stringstream ss;
      ss << in.rdbuf();
      spec = kplab::parse_spec(ss.str());
      if (seed) spec.seeds = {*seed};
    } else if (*census) {
      std::ostringstream text;
      text << "experiment=grassmann-census n=" << n << " k=" << k << " prime=" << p;
      spec = kplab::parse_spec(text.str());
    } else if (*verify) {
      spec = kplab::parse_spec("experiment=exponent-identities kmax=" +
                               std::to_string(kmax));
    } else if (*self) {
      return kplab::selftest(std::cout, threads) ? 0 : 3;
    }
    return emit(kplab::run_experiment(spec, opts), spec.out, json);
  } catch (const kplab::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 1;
  } catch (const kplab::BudgetError& e) {
    std::cerr << "refused: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
