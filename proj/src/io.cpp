#include "eqflow/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "eqflow/geometry.hpp"
#include "eqflow/profile.hpp"

namespace eqflow::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::vector<double>> parse_table(std::string_view text, std::string_view header) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  bool first = true;
  const std::size_t width = split(header, ',').size();
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (first) {
      if (line != header) {
        throw ValidationError("unexpected CSV header '" + std::string(line) + "', expected '" +
                              std::string(header) + "'");
      }
      first = false;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != width) {
      throw ValidationError("CSV line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(width));
    }
    std::vector<double> row;
    for (auto f : fields) row.push_back(parse_double(f));
    rows.push_back(std::move(row));
  }
  if (first) throw ValidationError("CSV input is empty");
  return rows;
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

constexpr std::string_view kOrbitHeader = "s,x,y,alpha,f,I,J";
constexpr std::string_view kPhaseHeader =
    "s,theta,alpha,dev_theta,dev_alpha,rate_theta,rate_alpha,log_scale";

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string_view out(buf, res.ptr - buf);
  // Shortest fixed form spells out every integer digit of large values.
  const auto sig = out.find_first_not_of("-0.");
  const auto digits = std::count_if(out.begin() + static_cast<std::ptrdiff_t>(sig), out.end(),
                                    [](char c) { return c >= '0' && c <= '9'; });
  if (out.find('e') == std::string_view::npos && digits > 17) {
    res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  }
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw ValidationError("empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ValidationError("malformed number '" + s + "'");
  return v;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string orbit_csv(const OrbitTrajectory& traj) {
  std::string out(kOrbitHeader);
  out += '\n';
  for (const auto& smp : traj.samples) {
    const auto st = smp.state();
    const double f = mean_curvature_f(st, smp.alpha_dot, traj.params);
    const auto pi = prime_integrals(st, traj.params);
    append_row(out, {smp.s, smp.x, smp.y, smp.alpha, f, pi.I, pi.J});
  }
  return out;
}

OrbitTrajectory parse_orbit_csv(std::string_view text, const Params& params, CurveSource source) {
  OrbitTrajectory traj;
  traj.params = params;
  traj.source = source;
  for (const auto& r : parse_table(text, kOrbitHeader)) {
    OrbitSample smp{r[0], r[1], r[2], r[3], 0.0};
    if (!(smp.x > 0.0)) throw ValidationError("orbit sample with x <= 0");
    double g = params.p * std::sin(smp.alpha) / smp.x;
    if (params.q > 0) g -= params.q * std::cos(smp.alpha) / smp.y;
    smp.alpha_dot = r[4] - g;
    traj.samples.push_back(smp);
  }
  return traj;
}

std::string phase_csv(const PhaseTrajectory& traj) {
  std::string out(kPhaseHeader);
  out += '\n';
  for (const auto& s : traj.samples) {
    append_row(out, {s.s, s.theta, s.alpha, s.dev_theta, s.dev_alpha, s.rate_theta, s.rate_alpha,
                     s.log_scale});
  }
  return out;
}

PhaseTrajectory parse_phase_csv(std::string_view text, const Params& params) {
  PhaseTrajectory traj;
  traj.params = params;
  for (const auto& r : parse_table(text, kPhaseHeader)) {
    traj.samples.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7]});
  }
  return traj;
}

json to_json(const Params& params) { return {{"p", params.p}, {"q", params.q}}; }

json to_json(const EquilibriumReport& rep, std::string_view label) {
  json eig = json::array();
  for (const auto& e : rep.eigenvalues) eig.push_back({{"re", e.real()}, {"im", e.imag()}});
  return {{"label", label},
          {"theta", rep.point.theta},
          {"alpha", rep.point.alpha},
          {"kind", to_string(rep.kind)},
          {"jacobian", {{rep.jacobian[0][0], rep.jacobian[0][1]}, {rep.jacobian[1][0], rep.jacobian[1][1]}}},
          {"eigenvalues", eig}};
}

json classification_json(const Params& params) {
  const auto pts = stationary_points(params);
  const auto labels = stationary_point_labels();
  json eq = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    eq.push_back(to_json(classify_equilibrium(pts[i], params), labels[i]));
  }
  return {{"params", to_json(params)},
          {"alpha0", alpha0(params)},
          {"dimension_sum", params.p + params.q},
          {"discriminant_factor", sink_discriminant_factor(params)},
          {"equilibria", eq}};
}

json to_json(const CertificateReport& rep) {
  json slopes = json::array();
  for (const auto& c : rep.candidate_slopes) {
    slopes.push_back({{"m", c.m},
                      {"multiplicity", c.multiplicity},
                      {"satisfies_line_test", c.satisfies_line_test},
                      {"residual", c.residual}});
  }
  return {{"params", to_json(rep.params)},
          {"resultant_degree", rep.resultant_degree},
          {"resultant_nonzero", rep.resultant_nonzero},
          {"candidate_slopes", slopes},
          {"minimal_line_found", rep.minimal_line_found},
          {"conclusion", to_string(rep.conclusion)},
          {"diagnostics", rep.diagnostics}};
}

CertificateReport certificate_from_json(const json& j) {
  try {
    CertificateReport rep;
    rep.params = {j.at("params").at("p").get<int>(), j.at("params").at("q").get<int>()};
    rep.resultant_degree = j.at("resultant_degree").get<int>();
    rep.resultant_nonzero = j.at("resultant_nonzero").get<bool>();
    for (const auto& c : j.at("candidate_slopes")) {
      rep.candidate_slopes.push_back({c.at("m").get<double>(), c.at("multiplicity").get<int>(),
                                      c.at("satisfies_line_test").get<bool>(),
                                      c.at("residual").get<double>()});
    }
    rep.minimal_line_found = j.at("minimal_line_found").get<bool>();
    const auto concl = j.at("conclusion").get<std::string>();
    if (concl == to_string(Conclusion::BiharmonicImpliesMinimal)) {
      rep.conclusion = Conclusion::BiharmonicImpliesMinimal;
    } else if (concl == to_string(Conclusion::Inconclusive)) {
      rep.conclusion = Conclusion::Inconclusive;
    } else {
      throw ValidationError("unknown conclusion '" + concl + "'");
    }
    rep.diagnostics = j.value("diagnostics", "");
    return rep;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed certificate report: ") + e.what());
  }
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"params", to_json(m.params)},
          {"seed", m.seed},
          {"tolerances", {{"rel", m.tolerances.rel}, {"abs", m.tolerances.abs}}},
          {"started_at", m.started_at},
          {"finished_at", m.finished_at},
          {"outputs", m.outputs},
          {"termination_summary", m.termination_summary},
          {"args", m.args}};
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.params = {j.at("params").at("p").get<int>(), j.at("params").at("q").get<int>()};
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tolerances = {j.at("tolerances").at("rel").get<double>(),
                    j.at("tolerances").at("abs").get<double>()};
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.termination_summary = j.value("termination_summary", "");
    m.args = j.value("args", json::object());
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Point3> mesh_points(const OrbitTrajectory& traj, const MeshExportConfig& cfg) {
  if (cfg.sphere_resolution < 3) {
    throw ValidationError("sphere_resolution must be >= 3 (got " +
                          std::to_string(cfg.sphere_resolution) + ")");
  }
  std::vector<Point3> pts;
  const bool doubly = traj.params.q > 0;
  for (const auto& smp : traj.samples) {
    for (int j = 0; j < cfg.sphere_resolution; ++j) {
      const double phi = kTwoPi * j / cfg.sphere_resolution;
      const double cx = smp.x * std::cos(phi);
      const double cz = smp.x * std::sin(phi);
      pts.push_back({cx, smp.y, cz});
      if (doubly) pts.push_back({cx, -smp.y, cz});
    }
  }
  return pts;
}

std::string mesh_obj(const std::vector<Point3>& pts) {
  std::string out;
  for (const auto& p : pts) {
    out += "v ";
    out += format_double(p[0]);
    out += ' ';
    out += format_double(p[1]);
    out += ' ';
    out += format_double(p[2]);
    out += '\n';
  }
  return out;
}

std::string mesh_csv(const std::vector<Point3>& pts) {
  std::string out = "X,Y,Z\n";
  for (const auto& p : pts) append_row(out, {p[0], p[1], p[2]});
  return out;
}

}  // namespace eqflow::io
