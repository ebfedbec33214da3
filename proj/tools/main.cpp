#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "runner.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitPrecision = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace affsing;

  CLI::App app{"Affine-subspace singular-vector experiments"};
  std::string command;
  std::optional<std::string> config_path, seed, out, budget, precision;

  std::string names;
  for (const auto& c : tools::commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + names)->required()->check(CLI::IsMember(tools::commands()));
  app.add_option("--config", config_path, "key = value file")->envname("AFFSING_CONFIG");
  app.add_option("--seed", seed, "random seed (u64)")->envname("AFFSING_SEED");
  app.add_option("--out", out, "output directory")->envname("AFFSING_OUT");
  app.add_option("--budget", budget, "enumeration node budget")->envname("AFFSING_BUDGET");
  app.add_option("--precision", precision, "bits for irrational parameters")->envname("AFFSING_PRECISION");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    config::Config cfg = config_path ? config::Config::load(*config_path) : config::Config{};
    if (seed) cfg.set("seed", *seed);
    if (out) cfg.set("out", *out);
    if (budget) cfg.set("budget", *budget);
    if (precision) cfg.set("precision", *precision);
    tools::RunContext ctx = tools::make_context(cfg);
    tools::RunResult r = tools::run_command(command, ctx);
    std::cout << ctx.out << "/" << command << ".json\n";
    return r.passed ? 0 : kExitFailed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}
