#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eqflow/certifier.hpp"
#include "eqflow/phase_plane.hpp"
#include "eqflow/trajectory.hpp"

namespace eqflow::io {

using nlohmann::json;

/// Shortest decimal that round-trips (at most 17 significant digits).
std::string format_double(double v);
double parse_double(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Columns s,x,y,alpha,f,I,J.
std::string orbit_csv(const OrbitTrajectory& traj);
/// Inverse of orbit_csv; the cached alpha' is recovered from the f column.
OrbitTrajectory parse_orbit_csv(std::string_view text, const Params& params,
                                CurveSource source = CurveSource::External);

/// Columns s,theta,alpha,dev_theta,dev_alpha,rate_theta,rate_alpha,log_scale.
std::string phase_csv(const PhaseTrajectory& traj);
PhaseTrajectory parse_phase_csv(std::string_view text, const Params& params);

json to_json(const Params& params);
json to_json(const EquilibriumReport& rep, std::string_view label);
/// All six stationary points of the field with their classification.
json classification_json(const Params& params);

json to_json(const CertificateReport& rep);
CertificateReport certificate_from_json(const json& j);

struct RunManifest {
  std::string command;
  Params params;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
  std::string termination_summary;
  json args = json::object();  // flat key/value record of the effective options
};

json to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

/// UTC time in ISO 8601 with second resolution.
std::string utc_timestamp();

struct MeshExportConfig {
  enum class Format { Obj, Csv };
  int sphere_resolution = 24;
  Format format = Format::Obj;
};

using Point3 = std::array<double, 3>;

/// Three-dimensional slice of the immersion (x w, y z): w runs over a great
/// circle of the first sphere, z over {+1, -1} of the second (or y is the
/// plain height when q == 0). The revolution axis is the second coordinate:
/// (x cos phi, y, x sin phi).
std::vector<Point3> mesh_points(const OrbitTrajectory& traj, const MeshExportConfig& cfg);
std::string mesh_obj(const std::vector<Point3>& pts);
std::string mesh_csv(const std::vector<Point3>& pts);

}  // namespace eqflow::io
