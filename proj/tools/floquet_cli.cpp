#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "floquet/harness/commands.hpp"
#include "floquet/harness/config.hpp"

namespace {

using floquet::harness::RunConfig;

enum class Kind { Text, Integer, Real, Flag };

struct Field {
  std::string key;
  Kind kind;
  std::string value;
  bool flag = false;
  CLI::Option* option = nullptr;
};

struct Subcommand {
  CLI::App* app = nullptr;
  std::vector<Field> fields;
  std::string config_path;
};

// CLI11 binds to the addresses of the field storage, so a Subcommand must not
// move after bind_fields.
void bind_fields(Subcommand& sub, const std::vector<std::string>& help) {
  for (std::size_t i = 0; i < sub.fields.size(); ++i) {
    Field& f = sub.fields[i];
    std::string name = "--" + f.key;
    for (char& c : name) {
      if (c == '_') c = '-';
    }
    if (f.kind == Kind::Flag) {
      f.option = sub.app->add_flag(name, f.flag, help[i]);
    } else {
      f.option = sub.app->add_option(name, f.value, help[i]);
      if (f.kind == Kind::Integer) f.option->check(CLI::NonNegativeNumber)->type_name("INT");
      if (f.kind == Kind::Real) f.option->check(CLI::Number)->type_name("FLOAT");
      if (f.kind == Kind::Text) f.option->type_name(f.key == "tx" || f.key == "ty" || f.key == "k" ? "ANGLE" : "TEXT");
    }
  }
  sub.app->add_option("--config", sub.config_path, "JSON config file; flags override it");
}

RunConfig build_config(const Subcommand& sub, const std::string& command) {
  RunConfig config = RunConfig::object();
  if (!sub.config_path.empty()) config = floquet::harness::load_config_file(sub.config_path);
  config["command"] = command;
  config["format"] = floquet::harness::kFormatVersion;
  for (const Field& f : sub.fields) {
    if (f.option->count() == 0) continue;
    switch (f.kind) {
      case Kind::Text:
        config[f.key] = f.value;
        break;
      case Kind::Integer:
        config[f.key] = std::stoull(f.value);
        break;
      case Kind::Real:
        config[f.key] = std::stod(f.value);
        break;
      case Kind::Flag:
        config[f.key] = f.flag;
        break;
    }
  }
  return config;
}

using FieldSpec = std::tuple<std::string, Kind, std::string>;

std::unique_ptr<Subcommand> make(CLI::App& root, const std::string& name,
                                 const std::string& description,
                                 const std::vector<FieldSpec>& fields) {
  auto sub = std::make_unique<Subcommand>();
  sub->app = root.add_subcommand(name, description);
  std::vector<std::string> help;
  for (const auto& [key, kind, text] : fields) {
    sub->fields.push_back({key, kind, {}, false, nullptr});
    help.push_back(text);
  }
  bind_fields(*sub, help);
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet two-band chain: invariants, quench detection, edge spectra, pulses"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  unsigned threads = 0;
  auto* threads_opt = app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--out", out_dir, "output directory");

  const FieldSpec tx{"tx", Kind::Text, "t_x, e.g. 0.5pi"};
  const FieldSpec ty{"ty", Kind::Text, "t_y, e.g. 0.5pi"};

  std::vector<std::pair<std::string, std::unique_ptr<Subcommand>>> subs;
  subs.emplace_back("phase-diagram",
                    make(app, "phase-diagram", "invariants (nu0, nu_pi) on a parameter grid",
                         {{"tx", Kind::Text, "t_x range a:b (default 0:3pi)"},
                          {"ty", Kind::Text, "t_y range a:b (default 0:3pi)"},
                          {"nx", Kind::Integer, "cells along t_x"},
                          {"ny", Kind::Integer, "cells along t_y"},
                          {"resolution", Kind::Integer, "k points for winding numbers"},
                          {"boundary_tol", Kind::Real, "gap below which a cell is a boundary"}}));
  subs.emplace_back("quench",
                    make(app, "quench", "time-averaged spin textures and BIS winding",
                         {tx,
                          ty,
                          {"frame", Kind::Text, "sym1, sym2 or both"},
                          {"steps", Kind::Integer, "number of Floquet periods"},
                          {"grid", Kind::Integer, "k points"},
                          {"shots", Kind::Integer, "projective measurements per point"},
                          {"seed", Kind::Integer, "random seed for shot noise"},
                          {"floor_tol", Kind::Real, "max |quench-axis average| at a BIS"},
                          {"slope_min", Kind::Real, "min normalized slope magnitude"}}));
  subs.emplace_back("spectrum",
                    make(app, "spectrum", "real-space quasienergy spectrum",
                         {tx,
                          ty,
                          {"frame", Kind::Text, "plain, sym1 or sym2"},
                          {"cells", Kind::Integer, "unit cells"},
                          {"boundary", Kind::Text, "open or periodic"},
                          {"edge_cells", Kind::Integer, "cells counted as edge"}}));
  subs.emplace_back("edges",
                    make(app, "edges", "count 0 and pi edge modes on an open chain",
                         {tx,
                          ty,
                          {"frame", Kind::Text, "plain, sym1 or sym2"},
                          {"cells", Kind::Integer, "unit cells"},
                          {"e_tol", Kind::Real, "quasienergy window around 0 and pi"},
                          {"edge_cells", Kind::Integer, "cells counted as edge"},
                          {"weight_tol", Kind::Real, "min edge weight"}}));
  subs.emplace_back("pulses",
                    make(app, "pulses", "compile a pulse schedule",
                         {tx,
                          ty,
                          {"frame", Kind::Text, "plain, sym1 or sym2"},
                          {"k", Kind::Text, "quasimomentum"},
                          {"repetitions", Kind::Integer, "number of periods"},
                          {"omega_ref", Kind::Real, "reference Rabi frequency"},
                          {"keep_zero", Kind::Flag, "keep zero-angle pulses"},
                          {"verify", Kind::Flag, "re-simulate and check the schedule"},
                          {"verify_tol", Kind::Real, "verification tolerance"}}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? floquet::harness::kExitOk : floquet::harness::kExitError;
  }

  floquet::harness::CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.log = &std::cout;
  ctx.diag = &std::cerr;
  try {
    if (threads_opt->count() > 0) {
      ctx.workers = threads;
    } else {
      ctx.workers = floquet::harness::threads_from_env().value_or(0);
    }
    for (const auto& [name, sub] : subs) {
      if (!sub->app->parsed()) continue;
      const RunConfig config = build_config(*sub, name);
      return floquet::harness::run_command(config, ctx).exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return floquet::harness::kExitError;
  }
  return floquet::harness::kExitError;
}
