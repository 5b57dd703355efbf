#include "vimod/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "vimod/errors.hpp"

namespace vimod {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) {
      return x;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("bad numeric value for '" + key + "': " + v);
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (trim(v.substr(used)).empty()) {
      return x;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("bad integer value for '" + key + "': " + v);
}

Vec8 parse_vec8(const std::string& key, const std::string& v) {
  std::vector<double> vals;
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, ',')) {
    vals.push_back(parse_double(key, trim(part)));
  }
  if (vals.size() != 8) {
    throw ConfigError("'" + key + "' needs 8 comma-separated values");
  }
  Vec8 out;
  for (int i = 0; i < 8; ++i) {
    out(i) = vals[i];
  }
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
  if (histogram_bins < 1) throw ConfigError("histogram_bins must be >= 1");
  if (grid_span < 1) throw ConfigError("grid_span must be >= 1");
  if (alpha <= 0.0 || alpha > 1.0) throw ConfigError("alpha must be in (0,1]");
  if (beta <= 0.0 || beta > 1.0) throw ConfigError("beta must be in (0,1]");
  if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("gamma must be in (0,1]");
  if ((q_diag.array() <= 0.0).any()) throw ConfigError("q_diag must be positive");
  if ((p0_diag.array() <= 0.0).any()) throw ConfigError("p0_diag must be positive");
  if (ransac_threshold <= 0.0) throw ConfigError("ransac_threshold must be > 0");
  if (ransac_max_iters < 1) throw ConfigError("ransac_max_iters must be >= 1");
  if (min_ground_inliers < 4) throw ConfigError("min_ground_inliers must be >= 4");
  if (min_front_inliers < 4) throw ConfigError("min_front_inliers must be >= 4");
  if (fg_threshold < 0.0 || fg_threshold > 1.0) {
    throw ConfigError("fg_threshold must be in [0,1]");
  }
  if (spatial_w < 1 || spatial_w % 2 == 0) {
    throw ConfigError("spatial_w must be a positive odd number");
  }
  if (entropy_floor <= 0.0) throw ConfigError("entropy_floor must be > 0");
  if (flow_min_mag < 0.0) throw ConfigError("flow_min_mag must be >= 0");
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path);
  }
  PipelineConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "sample_stride") {
      cfg.sample_stride = static_cast<int>(parse_int(key, val));
    } else if (key == "histogram_bins") {
      cfg.histogram_bins = static_cast<int>(parse_int(key, val));
    } else if (key == "grid_span") {
      cfg.grid_span = static_cast<int>(parse_int(key, val));
    } else if (key == "alpha") {
      cfg.alpha = parse_double(key, val);
    } else if (key == "beta") {
      cfg.beta = parse_double(key, val);
    } else if (key == "gamma") {
      cfg.gamma = parse_double(key, val);
    } else if (key == "q_diag") {
      cfg.q_diag = parse_vec8(key, val);
    } else if (key == "p0_diag") {
      cfg.p0_diag = parse_vec8(key, val);
    } else if (key == "ransac_threshold") {
      cfg.ransac_threshold = parse_double(key, val);
    } else if (key == "ransac_max_iters") {
      cfg.ransac_max_iters = static_cast<int>(parse_int(key, val));
    } else if (key == "min_ground_inliers") {
      cfg.min_ground_inliers = static_cast<int>(parse_int(key, val));
    } else if (key == "min_front_inliers") {
      cfg.min_front_inliers = static_cast<int>(parse_int(key, val));
    } else if (key == "fg_threshold") {
      cfg.fg_threshold = parse_double(key, val);
    } else if (key == "spatial_w") {
      cfg.spatial_w = static_cast<int>(parse_int(key, val));
    } else if (key == "entropy_floor") {
      cfg.entropy_floor = parse_double(key, val);
    } else if (key == "flow_min_mag") {
      cfg.flow_min_mag = parse_double(key, val);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
    } else {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace vimod
