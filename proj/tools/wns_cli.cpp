#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wns/error.hpp"
#include "wns/experiment.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> problem;
  std::optional<int> n;
  std::optional<double> mu;
  std::optional<double> T;
  std::optional<int> samples;
  std::optional<double> alpha;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "key = value config file");
  sub->add_option("--problem", o.problem, "ns3d or burgers1d");
  sub->add_option("--n", o.n, "even grid resolution");
  sub->add_option("--mu", o.mu, "viscosity");
  sub->add_option("--T", o.T, "time horizon");
  sub->add_option("--samples", o.samples, "time intervals");
  sub->add_option("--alpha", o.alpha, "analyticity parameter");
  sub->add_option("--tol", o.tol, "Picard tolerance");
  sub->add_option("--seed", o.seed, "root random seed");
  sub->add_option("-o,--out", o.out, "output directory");
  sub->add_option("--set", o.sets, "extra key=value override (repeatable)");
}

wns::KeyValues merge(const std::string& subcommand, const Overrides& o) {
  wns::KeyValues kv;
  if (!o.config.empty()) kv = wns::load_key_values(o.config);
  kv["subcommand"] = subcommand;
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    wns::require(eq != std::string::npos && eq > 0, wns::ErrorCode::invalid_argument,
                 "--set expects key=value, got '" + s + "'");
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  auto put = [&kv](const char* key, const auto& value) {
    if (!value) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>) kv[key] = *value;
    else if constexpr (std::is_floating_point_v<std::decay_t<decltype(*value)>>)
      kv[key] = wns::format_double(*value);
    else kv[key] = std::to_string(*value);
  };
  put("problem", o.problem);
  put("n", o.n);
  put("mu", o.mu);
  put("T", o.T);
  put("samples", o.samples);
  put("alpha", o.alpha);
  put("tol", o.tol);
  put("seed", o.seed);
  put("out", o.out);
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mild-solution experiments for the Navier-Stokes and Burgers equations"};
  app.require_subcommand(1);
  Overrides o;
  const std::vector<std::pair<std::string, std::string>> subs = {
      {"solve", "solve the mild formulation and write the trajectory and norms"},
      {"calibrate", "estimate the bilinear constant empirically"},
      {"radius", "fit the analyticity radius along a solution"},
      {"verify", "sweep the lattice inequalities"},
      {"depend", "measure continuous dependence on the data"},
  };
  for (const auto& [name, help] : subs) add_common(app.add_subcommand(name, help), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wns::kExitInvalidConfig;
  }

  std::string subcommand;
  for (const auto* sub : app.get_subcommands()) subcommand = sub->get_name();

  wns::ExperimentConfig cfg;
  try {
    cfg = wns::ExperimentConfig::from_key_values(merge(subcommand, o));
  } catch (const wns::Error& e) {
    std::cerr << wns::json{{"level", "error"},
                           {"code", wns::to_string(e.code())},
                           {"message", e.what()}}
                     .dump()
              << "\n";
    return e.code() == wns::ErrorCode::io ? wns::kExitIo : wns::kExitInvalidConfig;
  }
  const wns::ExperimentResult res = wns::run_experiment(cfg, std::cerr);
  if (!res.summary.is_null()) std::cout << res.summary.dump(2) << "\n";
  return res.exit_code;
}
