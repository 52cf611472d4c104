#include "cdyson/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cdyson {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("io: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  const std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",s_" << i;
  os << "\n";
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    os << format_double(traj.times[k]);
    for (double s : traj.samples[k]) os << "," << format_double(s);
    os << "\n";
  }
  return os.str();
}

std::string trajectory_binary(const Trajectory& traj) {
  const std::uint64_t rows = traj.samples.size();
  const std::uint64_t cols = 1 + (traj.samples.empty() ? 0 : traj.samples.front().size());
  std::string out;
  out.reserve(24 + rows * cols * sizeof(double));
  out.append("CDYSCOL1", 8);
  auto append_u64 = [&](std::uint64_t v) {
    char b[8];
    std::memcpy(b, &v, 8);
    out.append(b, 8);
  };
  append_u64(rows);
  append_u64(cols);
  auto append_f64 = [&](double v) {
    char b[8];
    std::memcpy(b, &v, 8);
    out.append(b, 8);
  };
  for (std::uint64_t r = 0; r < rows; ++r) append_f64(traj.times[r]);
  for (std::uint64_t c = 1; c < cols; ++c)
    for (std::uint64_t r = 0; r < rows; ++r) append_f64(traj.samples[r][c - 1]);
  return out;
}

std::string samples_csv(const SampleSet& samples, std::size_t thinning) {
  std::ostringstream os;
  const std::size_t n = samples.samples.empty() ? 0 : samples.samples.front().size();
  os << "sweep";
  for (std::size_t i = 1; i <= n; ++i) os << ",s_" << i;
  os << "\n";
  for (std::size_t k = 0; k < samples.samples.size(); ++k) {
    os << k * thinning;
    for (double s : samples.samples[k]) os << "," << format_double(s);
    os << "\n";
  }
  return os.str();
}

}  // namespace cdyson
