#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "umbilic/hypersurface.hpp"
#include "umbilic/stationarity.hpp"

namespace umbilic {

enum class GridSpacing { geometric, linear };

// Flat sectioned key-value file:
//
//   [model]        file = <path>   or   A_re, A_im and repeated
//                  h = a,b,m,re,im / g = a,b,m,re,im rows
//   [grid]         n, tmin, tmax, tpoints, spacing = geometric|linear
//   [truncation]   k_max, m_max, j_max, m_moments
//   [tolerances]   moment, obstruction, leak, polar
//   [output]       dir
//   [pipeline]     weight = pang|w_balanced, channel = z2|w1
//
// Every key is optional; '#' starts a comment.
struct ExperimentConfig {
  PreparedDefiningFunction model;
  std::string model_source = "heisenberg";

  int n = 256;
  double tmin = 0.02;
  double tmax = 0.2;
  int tpoints = 8;
  GridSpacing spacing = GridSpacing::geometric;

  int k_max = FourierTaylorSeries::kDefaultModes;
  int m_max = FourierTaylorSeries::kDefaultOrder;
  int j_max = 8;
  int m_moments = 16;

  double moment_tolerance = 1e-12;
  double obstruction_tolerance = 1e-10;
  double leak_tolerance = 1e-8;
  double polar_tolerance = 1e-14;

  std::string output_dir = ".";

  WeightKind weight = WeightKind::pang;
  MomentChannel channel = MomentChannel::z2;

  static constexpr double kTMax = 0.3;

  std::vector<double> t_grid() const;
  PipelineOptions pipeline() const;
  // Throws ConfigError naming the offending field.
  void validate() const;
};

// `base_dir` resolves a relative model file path.
ExperimentConfig parse_config(std::istream& in, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

}  // namespace umbilic
