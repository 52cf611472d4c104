#pragma once

#include <string>
#include <vector>

#include "cdyson/metropolis.hpp"
#include "cdyson/sde.hpp"

namespace cdyson {

/// Round-trip-exact decimal formatting (%.17g); keeps outputs byte-stable.
std::string format_double(double v);

/// Write via a temporary file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// CSV with header t,s_1,...,s_N.
std::string trajectory_csv(const Trajectory& traj);

/// Column-major binary layout: magic "CDYSCOL1", u64 rows, u64 cols,
/// then each column (t first, then s_1..s_N) as contiguous f64.
std::string trajectory_binary(const Trajectory& traj);

/// CSV with header sweep,s_1,...,s_N.
std::string samples_csv(const SampleSet& samples, std::size_t thinning);

}  // namespace cdyson
