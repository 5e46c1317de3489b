#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "acn/config.hpp"
#include "acn/experiment.hpp"
#include "acn/kernels.hpp"
#include "acn/parallel.hpp"
#include "acn/solver.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kAbort = 3 };

acn::ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  acn::Config c = acn::Config::load(path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw acn::ConfigError("override '" + kv + "' is not key=value");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return acn::load_experiment(c);
}

void print_checks(const std::vector<acn::CheckResult>& checks) {
  for (const auto& ch : checks)
    std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << " = " << ch.value << " (" << ch.relation << " "
              << ch.threshold << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  acn::configure_threads();
  CLI::App app{"Allen-Cahn flow with Neumann data on the disk"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "run one configured experiment");
  run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--set", overrides, "override a config key, key=value");

  std::vector<double> eps_list;
  double t_match = 0.05;
  auto* sweep = app.add_subcommand("sweep", "repeat an experiment across eps");
  sweep->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--eps", eps_list, "eps values, decreasing")->required()->delimiter(',');
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_option("--t-match", t_match, "comparison time");
  sweep->add_option("--set", overrides, "override a config key, key=value");

  int n = 2;
  std::size_t samples = 10000;
  unsigned seed = 1;
  auto* kcheck = app.add_subcommand("kernel-check", "finite-difference check of the kernel identities");
  kcheck->add_option("--n", n, "dimension")->check(CLI::Range(2, 3));
  kcheck->add_option("--samples", samples, "number of random samples");
  kcheck->add_option("--seed", seed, "random seed");

  auto* self = app.add_subcommand("selftest", "fast internal consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const acn::ExperimentConfig cfg = load(config_path, overrides);
      const acn::ExperimentResult r = acn::run_experiment(cfg, out_dir);
      acn::write_report(std::cout, r);
      return r.passed() ? kPass : kFail;
    }
    if (*sweep) {
      const acn::ExperimentConfig cfg = load(config_path, overrides);
      const acn::SweepResult s = acn::run_sweep(cfg, eps_list, out_dir, t_match);
      acn::write_sweep_csv(std::cout, s);
      std::cout << "C4_fit " << s.c4_fit << "\n";
      print_checks(s.checks);
      return s.passed() ? kPass : kFail;
    }
    if (*kcheck) {
      const auto rep = acn::kernel_selftest(n, samples, seed);
      std::cout << "n " << rep.n << ", samples " << rep.samples << "\nstandard worst " << rep.worst_standard
                << "\nreflected worst " << rep.worst_reflected << " (sample " << rep.worst_index << ")\n"
                << (rep.pass ? "PASS" : "FAIL") << "\n";
      return rep.pass ? kPass : kFail;
    }
    if (*self) {
      const auto checks = acn::selftest();
      print_checks(checks);
      for (const auto& c : checks)
        if (!c.pass) return kFail;
      return kPass;
    }
  } catch (const acn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const acn::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kAbort;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
  return kPass;
}
