#include "floquet/harness/commands.hpp"

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "floquet/errors.hpp"
#include "floquet/harness/io.hpp"
#include "floquet/lattice.hpp"
#include "floquet/pulsegen.hpp"
#include "floquet/quench.hpp"
#include "floquet/topology.hpp"

namespace floquet::harness {

namespace {

using nlohmann::json;

std::ostream& log_stream(const CommandContext& ctx) {
  static std::ostringstream sink;
  return ctx.log ? *ctx.log : sink;
}

std::ostream& diag_stream(const CommandContext& ctx) {
  static std::ostringstream sink;
  return ctx.diag ? *ctx.diag : sink;
}

json header(const RunConfig& config) {
  json doc;
  doc["format"] = kFormatVersion;
  doc["config_hash"] = config_hash(config);
  return doc;
}

json params_json(const ModelParams& p) { return json{{"tx", p.tx}, {"ty", p.ty}}; }

std::string fmt_int(long long v) { return std::to_string(v); }

void emit(CommandResult& result, const CommandContext& ctx, const std::string& name,
          const std::string& content) {
  const auto path = ctx.out_dir / name;
  write_text_file(path, content);
  result.files.push_back(path);
}

std::optional<std::size_t> optional_size(const RunConfig& config, const char* key) {
  const auto it = config.find(key);
  if (it == config.end() || it->is_null()) return std::nullopt;
  return it->get<std::size_t>();
}

}  // namespace

CommandResult cmd_phase_diagram(const RunConfig& config, const CommandContext& ctx) {
  const std::size_t nx = get_or<std::size_t>(config, "nx", 60);
  const std::size_t ny = get_or<std::size_t>(config, "ny", 60);
  PhaseDiagramSpec spec;
  spec.tx = range_value(config.value("tx", json("0:3pi")), nx);
  spec.ty = range_value(config.value("ty", json("0:3pi")), ny);
  spec.resolution = get_or<std::size_t>(config, "resolution", kDefaultResolution);
  spec.boundary_tol = get_or<double>(config, "boundary_tol", kBoundaryTol);

  const PhaseDiagram diagram = phase_diagram(spec, ctx.workers);
  const std::string hash = config_hash(config);

  CsvWriter csv({"tx", "ty", "nu0", "nu_pi", "boundary_flag", "min_gap0", "min_gap_pi"}, hash,
                kFormatVersion);
  std::map<std::pair<int, int>, std::size_t> phases;
  std::size_t boundary_cells = 0;
  for (const PhaseCell& cell : diagram.cells) {
    std::string nu0;
    std::string nu_pi;
    if (cell.invariants) {
      nu0 = fmt_int(cell.invariants->nu0);
      nu_pi = fmt_int(cell.invariants->nu_pi);
      ++phases[{cell.invariants->nu0, cell.invariants->nu_pi}];
    } else {
      ++boundary_cells;
    }
    csv.row({format_double(cell.tx), format_double(cell.ty), nu0, nu_pi,
             fmt_int(cell.boundary_flag()), format_double(cell.min_gap_zero),
             format_double(cell.min_gap_pi)});
  }

  json summary = header(config);
  summary["grid"] = {{"nx", nx},
                     {"ny", ny},
                     {"tx", {spec.tx.min, spec.tx.max}},
                     {"ty", {spec.ty.min, spec.ty.max}}};
  summary["boundary_cells"] = boundary_cells;
  json list = json::array();
  for (const auto& [key, count] : phases) {
    list.push_back({{"nu0", key.first}, {"nu_pi", key.second}, {"cells", count}});
  }
  summary["phases"] = std::move(list);

  CommandResult result;
  emit(result, ctx, "phase_diagram.csv", csv.text());
  emit(result, ctx, "phase_diagram.json", dump_json(summary));
  log_stream(ctx) << "phase-diagram: " << diagram.cells.size() << " cells, " << boundary_cells
                  << " on boundaries, " << phases.size() << " phases\n";
  return result;
}

CommandResult cmd_quench(const RunConfig& config, const CommandContext& ctx) {
  const ModelParams p = model_params(config);
  const std::string frame_text = get_or<std::string>(config, "frame", "both");
  std::vector<Frame> frames;
  if (frame_text == "both") {
    frames = {Frame::Sym1, Frame::Sym2};
  } else {
    frames = {parse_frame(frame_text)};
  }

  QuenchSpec base;
  base.params = p;
  base.steps = get_or<unsigned>(config, "steps", 60);
  base.k_grid = brillouin_grid(get_or<std::size_t>(config, "grid", 512));
  if (const auto shots = config.find("shots"); shots != config.end() && !shots->is_null()) {
    base.shots = shots->get<std::uint64_t>();
  }
  base.seed = get_or<std::uint64_t>(config, "seed", 0);

  BisConfig bis;
  bis.floor_tol = get_or<double>(config, "floor_tol", bis.floor_tol);
  bis.slope_min = get_or<double>(config, "slope_min", bis.slope_min);

  const std::string hash = config_hash(config);
  CommandResult result;
  json report = header(config);
  report["params"] = params_json(p);
  report["steps"] = base.steps;
  report["grid"] = base.k_grid.size();
  if (base.shots) {
    report["shots"] = *base.shots;
    report["seed"] = base.seed;
  }
  json frames_json = json::object();
  std::map<Frame, int> windings;

  for (const Frame frame : frames) {
    QuenchSpec spec = base;
    spec.frame = frame;
    const PolarizationTrace trace = evolve_polarizations(spec, ctx.workers);

    CsvWriter csv({"k", "sigma_x_avg", "sigma_y_avg", "stderr_x", "stderr_y", "sigma_x_exact",
                   "sigma_y_exact"},
                  hash, kFormatVersion);
    for (std::size_t j = 0; j < trace.size(); ++j) {
      const double sx = trace.sampled ? trace.sampled->sx[j] : trace.avg_x[j];
      const double sy = trace.sampled ? trace.sampled->sy[j] : trace.avg_y[j];
      const double ex = trace.sampled ? trace.sampled->stderr_x[j] : 0.0;
      const double ey = trace.sampled ? trace.sampled->stderr_y[j] : 0.0;
      csv.row({format_double(spec.k_grid[j]), format_double(sx), format_double(sy),
               format_double(ex), format_double(ey), format_double(trace.avg_x[j]),
               format_double(trace.avg_y[j])});
    }
    const std::string name(to_string(frame));
    emit(result, ctx, "quench_" + name + ".csv", csv.text());

    BisReport bis_report;
    try {
      bis_report = extract_winding(trace, bis);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoBisFound) throw;
      json failure = header(config);
      failure["error"] = {{"code", "no_bis_found"}, {"frame", name}, {"message", e.what()}};
      emit(result, ctx, "bis_report.json", dump_json(failure));
      diag_stream(ctx) << failure.dump() << "\n";
      result.exit_code = kExitNoBis;
      return result;
    }

    json entry;
    json points = json::array();
    for (const BisSlope& s : bis_report.points) {
      points.push_back({{"k", s.k},
                        {"g", s.g},
                        {"slope", s.raw},
                        {"slope_normalized", s.normalized},
                        {"k_plus", s.in_k_plus}});
    }
    entry["bis"] = std::move(points);
    entry["nu"] = bis_report.winding;
    frames_json[name] = std::move(entry);
    windings[frame] = bis_report.winding;
    log_stream(ctx) << "quench " << name << ": " << bis_report.points.size()
                    << " BIS, winding " << bis_report.winding << "\n";
  }
  report["frames"] = std::move(frames_json);

  if (windings.count(Frame::Sym1) && windings.count(Frame::Sym2)) {
    const WindingPair w{windings[Frame::Sym1], windings[Frame::Sym2]};
    const InvariantPair inv = invariants_from_windings(w);
    report["nu1"] = w.nu1;
    report["nu2"] = w.nu2;
    report["nu0"] = inv.nu0;
    report["nu_pi"] = inv.nu_pi;
    log_stream(ctx) << "quench: (nu0, nu_pi) = (" << inv.nu0 << ", " << inv.nu_pi << ")\n";
  }
  emit(result, ctx, "bis_report.json", dump_json(report));
  return result;
}

namespace {

std::string spectrum_csv(const LatticeSpectrum& spectrum, const std::string& hash) {
  CsvWriter csv({"index", "phase", "edge_weight_left", "edge_weight_right"}, hash, kFormatVersion);
  for (std::size_t i = 0; i < spectrum.phases.size(); ++i) {
    csv.row({fmt_int(static_cast<long long>(i)), format_double(spectrum.phases[i]),
             format_double(spectrum.edge_left[i]), format_double(spectrum.edge_right[i])});
  }
  return csv.text();
}

Boundary parse_boundary(const std::string& text) {
  if (text == "open") return Boundary::Open;
  if (text == "periodic") return Boundary::Periodic;
  throw Error(ErrorCode::InvalidArgument, "boundary must be open or periodic, got '" + text + "'");
}

}  // namespace

CommandResult cmd_spectrum(const RunConfig& config, const CommandContext& ctx) {
  const ModelParams p = model_params(config);
  const Frame frame = parse_frame(get_or<std::string>(config, "frame", "sym1"));
  const std::size_t cells = get_or<std::size_t>(config, "cells", 40);
  const Boundary boundary = parse_boundary(get_or<std::string>(config, "boundary", "open"));
  const LatticeSpectrum spectrum =
      lattice_spectrum(p, frame, cells, boundary, optional_size(config, "edge_cells"));

  CommandResult result;
  emit(result, ctx, "spectrum.csv", spectrum_csv(spectrum, config_hash(config)));
  log_stream(ctx) << "spectrum: " << spectrum.phases.size() << " eigenphases\n";
  return result;
}

CommandResult cmd_edges(const RunConfig& config, const CommandContext& ctx) {
  const ModelParams p = model_params(config);
  const Frame frame = parse_frame(get_or<std::string>(config, "frame", "sym1"));
  const std::size_t cells = get_or<std::size_t>(config, "cells", 40);
  EdgeCountOptions options;
  options.e_tol = get_or<double>(config, "e_tol", options.e_tol);
  options.weight_tol = get_or<double>(config, "weight_tol", options.weight_tol);
  options.edge_cells = optional_size(config, "edge_cells");

  require_bulk_gap(p, options);
  const std::size_t edge_cells = options.edge_cells.value_or(default_edge_cells(cells));
  const LatticeSpectrum spectrum = lattice_spectrum(p, frame, cells, Boundary::Open, edge_cells);
  const EdgeModeCount count = count_edge_modes(spectrum, options);

  json doc = header(config);
  doc["params"] = params_json(p);
  doc["frame"] = std::string(to_string(frame));
  doc["cells"] = cells;
  doc["edge_cells"] = edge_cells;
  doc["e_tol"] = options.e_tol;
  doc["weight_tol"] = options.weight_tol;
  doc["n_zero"] = count.n_zero;
  doc["n_pi"] = count.n_pi;

  CommandResult result;
  const std::string hash = config_hash(config);
  emit(result, ctx, "edges.json", dump_json(doc));
  emit(result, ctx, "spectrum.csv", spectrum_csv(spectrum, hash));
  log_stream(ctx) << "edges: n_zero = " << count.n_zero << ", n_pi = " << count.n_pi << "\n";
  return result;
}

CommandResult cmd_pulses(const RunConfig& config, const CommandContext& ctx) {
  const ModelParams p = model_params(config);
  const Frame frame = parse_frame(get_or<std::string>(config, "frame", "sym1"));
  const double k = angle_value(config.value("k", json(0.0)));
  const auto repetitions = get_or<std::size_t>(config, "repetitions", 1);
  if (!config.contains("omega_ref") || config["omega_ref"].is_null()) {
    throw Error(ErrorCode::InvalidArgument, "omega_ref is required");
  }
  const double omega_ref = config["omega_ref"].get<double>();
  CompileOptions options;
  options.keep_zero = get_or<bool>(config, "keep_zero", false);

  const PulseSchedule schedule = compile_schedule(k, p, frame, repetitions, omega_ref, options);
  json doc = json::parse(schedule_to_json(schedule));
  doc["config_hash"] = config_hash(config);

  CommandResult result;
  if (get_or<bool>(config, "verify", false)) {
    const double tol = get_or<double>(config, "verify_tol", 1e-10);
    const Unitary2 target = floquet_operator(k, p, frame).pow(static_cast<unsigned>(repetitions));
    const double distance = distance_up_to_phase(simulate_schedule(schedule), target);
    const bool passed = distance < tol;
    doc["verification"] = {{"distance", distance}, {"tolerance", tol}, {"passed", passed}};
    log_stream(ctx) << "pulses: verification distance " << format_double(distance)
                    << (passed ? " (ok)" : " (FAILED)") << "\n";
    if (!passed) {
      diag_stream(ctx) << "schedule verification failed: distance " << format_double(distance)
                       << " >= " << format_double(tol) << "\n";
      result.exit_code = kExitVerifyFailed;
    }
  }
  emit(result, ctx, "schedule.json", dump_json(doc));
  log_stream(ctx) << "pulses: " << schedule.pulses.size() << " pulses, total duration "
                  << format_double(schedule.total_duration()) << " s\n";
  return result;
}

CommandResult run_command(const RunConfig& config, const CommandContext& ctx) {
  const std::string command = get_or<std::string>(config, "command", "");
  try {
    if (command == "phase-diagram") return cmd_phase_diagram(config, ctx);
    if (command == "quench") return cmd_quench(config, ctx);
    if (command == "spectrum") return cmd_spectrum(config, ctx);
    if (command == "edges") return cmd_edges(config, ctx);
    if (command == "pulses") return cmd_pulses(config, ctx);
    diag_stream(ctx) << "error: unknown command '" << command << "'\n";
  } catch (const Error& e) {
    diag_stream(ctx) << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    diag_stream(ctx) << "error: bad config value: " << e.what() << "\n";
  } catch (const std::exception& e) {
    diag_stream(ctx) << "error: " << e.what() << "\n";
  }
  return CommandResult{kExitError, {}};
}

}  // namespace floquet::harness
