#pragma once

#include <string>
#include <vector>

#include "nomavlc/config.hpp"

namespace nomavlc {

// one SNR point of a sum-rate comparison sweep
struct SweepPoint {
  double snr_db = 0.0;
  double proposed = 0.0;
  double grpa = 0.0;
  double sh_baseline = 0.0;
  double awgn_reference = 0.0;
  bool flagged = false;   // allocation did not reach a feasible fixed point
  std::string note;       // allocator diagnostic for flagged points
};

// computes the sweep verb's rows without touching the filesystem
std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg);

// runs one verb end to end, writing artifacts under cfg.output_dir;
// returns the process exit code (0 success, 3 solver non-convergence);
// config and numerical failures are reported by exception
int run_command(Verb verb, const ExperimentConfig& cfg);

}  // namespace nomavlc
