// eqflow command-line front end.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqflow/certifier.hpp"
#include "eqflow/errors.hpp"
#include "eqflow/io.hpp"
#include "eqflow/phase_plane.hpp"
#include "eqflow/profile.hpp"

namespace fs = std::filesystem;
using eqflow::io::json;

namespace {

enum Exit { kOk = 0, kValidation = 2, kNumerical = 3, kIo = 4 };

struct Options {
  int p = 1;
  int q = 1;
  std::string start;
  std::string direction = "fwd";
  double max_arclen = 0.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  std::string format;
  // catenary
  double C = 1.0;
  double x_max = 0.0;
  double y0 = 0.0;
  int samples = 201;
  bool extend = false;
  // mesh
  std::string input;
  int resolution = 24;
  // sweep
  int count = 20;
};

// Options recorded in manifests and accepted in config files. out and config
// stay out so a replay can be redirected.
const std::vector<std::string> kReplayKeys = {
    "p",       "q",  "start", "direction", "max-arclen", "rel-tol", "abs-tol", "seed", "format",
    "C",       "x-max", "y0", "samples",   "extend",     "input",   "resolution", "count"};

std::vector<double> parse_list(const std::string& text, std::size_t n, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(eqflow::io::parse_double(item));
  if (out.size() != n) {
    throw eqflow::ValidationError("--start for " + what + " needs " + std::to_string(n) +
                                  " comma-separated values (got '" + text + "')");
  }
  return out;
}

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return eqflow::io::format_double(v.get<double>());
  throw eqflow::ValidationError("config value " + v.dump() + " is not a scalar");
}

// Flat key/value object, or a manifest whose "args" holds one.
std::map<std::string, std::string> load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(eqflow::io::read_file(path));
  } catch (const json::exception& e) {
    throw eqflow::ValidationError("config " + path + " is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("args") && j.contains("command")) j = j["args"];
  if (!j.is_object()) throw eqflow::ValidationError("config " + path + " must be a JSON object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (std::find(kReplayKeys.begin(), kReplayKeys.end(), k) == kReplayKeys.end()) {
      throw eqflow::ValidationError("config " + path + ": unknown key '" + k + "'");
    }
    out[k] = config_value(v);
  }
  return out;
}

fs::path output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("EQFLOW_OUT"); env && *env) return env;
  return "eqflow_out";
}

eqflow::Params checked_params(const Options& o) {
  eqflow::Params params{o.p, o.q};
  params.validate();
  return params;
}

eqflow::Tolerances checked_tolerances(const Options& o) {
  if (!(o.rel_tol > 0) || !(o.abs_tol > 0)) {
    throw eqflow::ValidationError("--rel-tol and --abs-tol must be positive");
  }
  return {o.rel_tol, o.abs_tol};
}

class Run {
 public:
  Run(std::string command, const Options& o, json args)
      : dir_(output_dir(o)) {
    m_.command = std::move(command);
    m_.params = {o.p, o.q};
    m_.seed = o.seed;
    m_.tolerances = {o.rel_tol, o.abs_tol};
    m_.started_at = eqflow::io::utc_timestamp();
    m_.args = std::move(args);
  }

  void emit(const std::string& name, std::string_view content) {
    const fs::path path = dir_ / name;
    eqflow::io::atomic_write(path, content);
    m_.outputs.push_back(path.string());
  }

  void summary(std::string s) { m_.termination_summary = std::move(s); }

  void finish() {
    m_.finished_at = eqflow::io::utc_timestamp();
    eqflow::io::atomic_write(dir_ / (m_.command + ".manifest.json"),
                             eqflow::io::to_json(m_).dump(2) + "\n");
  }

 private:
  fs::path dir_;
  eqflow::io::RunManifest m_;
};

int cmd_classify(const Options& o, Run& run) {
  const auto params = checked_params(o);
  if (params.q < 1) throw eqflow::ValidationError("classify needs q >= 1 (got q = 0)");
  const auto report = eqflow::io::classification_json(params);
  run.emit("classify.json", report.dump(2) + "\n");
  std::string line;
  for (const auto& e : report["equilibria"]) {
    line += e["label"].get<std::string>() + ":" + e["kind"].get<std::string>() + " ";
  }
  line.pop_back();
  run.summary(line);
  run.finish();
  std::cout << line << "\n";
  return kOk;
}

eqflow::Direction parse_direction(const std::string& d) {
  if (d == "fwd") return eqflow::Direction::Forward;
  if (d == "bwd") return eqflow::Direction::Backward;
  throw eqflow::ValidationError("--direction must be fwd or bwd (got '" + d + "')");
}

int finish_trajectory(Run& run, eqflow::Termination t, const std::string& extra) {
  std::string line = "termination=" + std::string(eqflow::to_string(t)) + extra;
  run.summary(line);
  run.finish();
  std::cout << line << "\n";
  if (t == eqflow::Termination::StepUnderflow) {
    std::cerr << "error[numerical]: step size underflow\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_phase(const Options& o, Run& run) {
  const auto params = checked_params(o);
  if (o.start.empty()) throw eqflow::ValidationError("phase needs --start \"theta,alpha\"");
  const auto v = parse_list(o.start, 2, "phase");
  eqflow::PhaseOptions opt;
  opt.max_arclen = o.max_arclen;
  opt.tolerances = checked_tolerances(o);
  opt.backward = parse_direction(o.direction) == eqflow::Direction::Backward;
  opt.stop_on_convergence = false;
  const auto traj = eqflow::integrate_phase({v[0], v[1]}, params, opt);
  run.emit("phase.csv", eqflow::io::phase_csv(traj));
  return finish_trajectory(run, traj.termination,
                           " crossings=" + std::to_string(eqflow::crossing_count(traj)));
}

int cmd_orbit(const Options& o, Run& run) {
  const auto params = checked_params(o);
  if (o.start.empty()) throw eqflow::ValidationError("orbit needs --start \"x,y,alpha\"");
  const auto v = parse_list(o.start, 3, "orbit");
  eqflow::OrbitOptions opt;
  opt.direction = parse_direction(o.direction);
  if (o.max_arclen > 0) opt.max_arclen = o.max_arclen;
  opt.tolerances = checked_tolerances(o);
  const auto traj = eqflow::integrate_orbit({v[0], v[1], v[2], 0.0}, params, opt);
  run.emit("orbit.csv", eqflow::io::orbit_csv(traj));
  return finish_trajectory(run, traj.termination,
                           " samples=" + std::to_string(traj.samples.size()));
}

int cmd_catenary(const Options& o, Run& run) {
  if (o.p < 1) throw eqflow::ValidationError("p must be >= 1 (got " + std::to_string(o.p) + ")");
  if (!(o.C > 0)) throw eqflow::ValidationError("--C must be positive");
  const double vertex = std::pow(o.C, 3.0 / o.p);
  const double x_max = o.x_max > 0 ? o.x_max : 100.0 * vertex;
  if (!(x_max > vertex)) {
    throw eqflow::ValidationError("--x-max must exceed the vertex radius C^(3/p) = " +
                                  eqflow::io::format_double(vertex));
  }
  if (o.samples < 2) throw eqflow::ValidationError("--samples must be >= 2");
  auto traj = eqflow::catenary_profile(o.C, o.p, x_max, static_cast<std::size_t>(o.samples), o.y0);
  if (o.extend) traj = eqflow::extend_catenary(traj);
  run.emit("catenary.csv", eqflow::io::orbit_csv(traj));
  run.summary("samples=" + std::to_string(traj.samples.size()));
  run.finish();
  return kOk;
}

int cmd_certify(const Options& o, Run& run) {
  const auto rep = eqflow::certify_minimality({o.p, o.q});
  run.emit("certificate.json", eqflow::io::to_json(rep).dump(2) + "\n");
  const std::string line = "conclusion=" + std::string(eqflow::to_string(rep.conclusion)) +
                           " resultant_degree=" + std::to_string(rep.resultant_degree);
  run.summary(line);
  run.finish();
  std::cout << line << "\n";
  return kOk;
}

int cmd_mesh(const Options& o, Run& run) {
  const auto params = checked_params(o);
  if (o.input.empty()) throw eqflow::ValidationError("mesh needs --input FILE (orbit CSV)");
  const auto traj = eqflow::io::parse_orbit_csv(eqflow::io::read_file(o.input), params);
  eqflow::io::MeshExportConfig cfg;
  cfg.sphere_resolution = o.resolution;
  if (o.format.empty() || o.format == "obj") {
    cfg.format = eqflow::io::MeshExportConfig::Format::Obj;
  } else if (o.format == "csv") {
    cfg.format = eqflow::io::MeshExportConfig::Format::Csv;
  } else {
    throw eqflow::ValidationError("mesh --format must be obj or csv (got '" + o.format + "')");
  }
  const auto pts = eqflow::io::mesh_points(traj, cfg);
  if (cfg.format == eqflow::io::MeshExportConfig::Format::Obj) {
    run.emit("mesh.obj", eqflow::io::mesh_obj(pts));
  } else {
    run.emit("mesh.csv", eqflow::io::mesh_csv(pts));
  }
  run.summary("points=" + std::to_string(pts.size()));
  run.finish();
  return kOk;
}

// Seeded interior starts in R1, integrated in the phase plane.
int cmd_sweep(const Options& o, Run& run) {
  const auto params = checked_params(o);
  if (o.count < 1) throw eqflow::ValidationError("--count must be >= 1");
  eqflow::PhaseOptions opt;
  opt.max_arclen = o.max_arclen;
  opt.tolerances = checked_tolerances(o);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  json runs = json::array();
  int converged = 0;
  bool underflow = false;
  for (int i = 0; i < o.count; ++i) {
    const double theta = 0.05 + (eqflow::kHalfPi - 0.1) * unit(rng);
    const double alpha = theta - eqflow::kHalfPi + 0.05 + (eqflow::kPi - 0.1) * unit(rng);
    const auto traj = eqflow::integrate_phase({theta, alpha}, params, opt);
    const auto& last = traj.samples.back();
    if (traj.termination == eqflow::Termination::ConvergedToEquilibrium) ++converged;
    if (traj.termination == eqflow::Termination::StepUnderflow) underflow = true;
    runs.push_back({{"theta", theta},
                    {"alpha", alpha},
                    {"termination", eqflow::to_string(traj.termination)},
                    {"s_final", last.s},
                    {"log_distance", last.log_distance()},
                    {"crossings", eqflow::crossing_count(traj)}});
  }
  json doc = {{"params", eqflow::io::to_json(params)}, {"seed", o.seed}, {"runs", runs}};
  run.emit("sweep.json", doc.dump(2) + "\n");
  return finish_trajectory(
      run, underflow ? eqflow::Termination::StepUnderflow : eqflow::Termination::MaxLength,
      " converged=" + std::to_string(converged) + "/" + std::to_string(o.count));
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "dimension of the first sphere factor");
  sub->add_option("--q", o.q, "dimension of the second sphere factor");
  sub->add_option("--seed", o.seed, "64-bit seed for randomized starts");
  sub->add_option("--rel-tol", o.rel_tol);
  sub->add_option("--abs-tol", o.abs_tol);
  sub->add_option("--out", o.out, "output directory (default $EQFLOW_OUT or ./eqflow_out)");
  sub->add_option("--config", o.config, "flat JSON config or a manifest to replay");
  sub->add_option("--format", o.format, "csv, json or obj");
}

void add_trajectory(CLI::App* sub, Options& o) {
  sub->add_option("--start", o.start, "start point, comma separated");
  sub->add_option("--direction", o.direction, "fwd or bwd");
  sub->add_option("--max-arclen", o.max_arclen);
}

struct Cli {
  CLI::App app{"Equivariant biconservative and biharmonic hypersurface toolkit", "eqflow"};
  Options o;
  std::map<std::string, int (*)(const Options&, Run&)> handlers;

  Cli() {
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_help_all_flag("--help-all");
    auto sub = [&](const char* name, const char* desc, int (*h)(const Options&, Run&)) {
      handlers[name] = h;
      auto* s = app.add_subcommand(name, desc);
      add_common(s, o);
      return s;
    };
    sub("classify", "classify the stationary points of the phase field", cmd_classify);
    add_trajectory(sub("phase", "integrate the phase-plane field", cmd_phase), o);
    add_trajectory(sub("orbit", "integrate a profile curve in the orbit space", cmd_orbit), o);
    auto* cat = sub("catenary", "q = 0 catenary-type profile", cmd_catenary);
    cat->add_option("--C", o.C, "value of the conserved quantity");
    cat->add_option("--x-max", o.x_max, "outer radius (default 100 C^(3/p))");
    cat->add_option("--y0", o.y0, "height of the vertical tangent");
    cat->add_option("--samples", o.samples);
    cat->add_flag("--extend", o.extend, "append the mirror branch");
    sub("certify", "exact resultant certificate for biharmonic profiles", cmd_certify);
    auto* mesh = sub("mesh", "point cloud of the hypersurface from an orbit CSV", cmd_mesh);
    mesh->add_option("--input", o.input, "orbit CSV (columns s,x,y,alpha,f,I,J)");
    mesh->add_option("--resolution", o.resolution, "samples per sphere factor");
    auto* sw = sub("sweep", "seeded batch of phase-plane runs", cmd_sweep);
    add_trajectory(sw, o);
    sw->add_option("--count", o.count, "number of random starts");
  }

  CLI::App* active() { return app.get_subcommands().front(); }

  // Effective replayable options of the active subcommand.
  json args() {
    json a = json::object();
    auto* s = active();
    for (const auto& key : kReplayKeys) {
      auto* opt = s->get_option_no_throw("--" + key);
      if (!opt) continue;
      if (opt->get_expected_min() == 0) {
        a[key] = opt->count() > 0 ? "true" : "false";
        continue;
      }
      const auto& r = opt->results();
      const std::string v = r.empty() ? opt->get_default_str() : r.back();
      if (!v.empty()) a[key] = v;
    }
    return a;
  }
};

int report(Exit code, const char* kind, const std::string& msg) {
  std::string one_line = msg;
  for (auto& c : one_line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error[" << kind << "]: " << one_line << "\n";
  return code;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  {
    // First pass only locates the subcommand, the config file and the
    // options given explicitly.
    Cli probe;
    try {
      probe.app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return probe.app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return probe.app.exit(e);
    } catch (const CLI::ParseError& e) {
      return report(kValidation, "validation", e.what());
    }
    config_path = probe.o.config;
    if (!config_path.empty()) {
      auto* s = probe.active();
      std::vector<std::string> merged{s->get_name()};
      for (const auto& [k, v] : load_config(config_path)) {
        auto* opt = s->get_option_no_throw("--" + k);
        if (!opt) throw eqflow::ValidationError("option --" + k + " does not apply to " + s->get_name());
        if (opt->count() > 0) continue;  // flags win
        if (opt->get_expected_min() == 0) {
          if (v == "true") merged.push_back("--" + k);
          continue;
        }
        merged.push_back("--" + k);
        merged.push_back(v);
      }
      merged.insert(merged.end(), args.begin() + 1, args.end());
      args = std::move(merged);
    }
  }

  Cli cli;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    cli.app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return report(kValidation, "validation", e.what());
  }
  const std::string name = cli.active()->get_name();
  Run run(name, cli.o, cli.args());
  return cli.handlers.at(name)(cli.o, run);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const eqflow::IoError& e) {
    return report(kIo, "io", e.what());
  } catch (const eqflow::DegenerateResultant& e) {
    return report(kNumerical, "numerical", e.what());
  } catch (const eqflow::Error& e) {
    // Domain, parameter and sample-count errors all stem from the input.
    return report(kValidation, "validation", e.what());
  } catch (const std::exception& e) {
    return report(kNumerical, "numerical", e.what());
  }
}
