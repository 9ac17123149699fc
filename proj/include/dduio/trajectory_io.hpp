#pragma once

#include <filesystem>
#include <string>

#include "dduio/trajectory.hpp"

namespace dduio {

// On-disk trajectory format: a CSV with header
//   t,u_0..u_{m-1},d_0..d_{m_d-1},x_0..x_{n-1},y_0..y_{p-1}
// (absent signals omit their column group) plus a JSON sidecar next to it
// holding dims and metadata. Numbers are written as shortest decimals that
// parse back to the identical double, so write -> read round-trips
// bit-exactly.

// Shortest round-trippable decimal rendering of a double.
std::string format_double(double v);
double parse_double(const std::string& s);

void write_trajectory(const std::filesystem::path& csv_path,
                      const Trajectory& traj);

// Reads the CSV; uses the sidecar when present, otherwise reconstructs the
// dims from the header. Online data without d or x columns is returned with
// the corresponding has_* flags cleared.
Trajectory read_trajectory(const std::filesystem::path& csv_path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace dduio
