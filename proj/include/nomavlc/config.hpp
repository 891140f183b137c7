#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomavlc/noise.hpp"

namespace nomavlc {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verb { noise_pdf, rate_static, rate_mobility, allocate, sweep };

Verb verb_from_string(const std::string& name);
std::string to_string(Verb verb);

// flat dotted key-value experiment description; unknown keys are rejected
struct ExperimentConfig {
  NoiseParams noise{2.0, 0.0, 10, 10};

  std::string channel_mode = "static";  // static | mobility
  std::vector<double> gains;            // ascending, static mode
  double h_min = 0.0;                   // mobility support
  double h_max = 0.0;
  double half_angle_deg = 0.0;
  double led_height = 0.0;
  std::vector<double> radii;            // optional: derive static gains

  int user_count = 0;
  std::vector<double> thresholds;       // bpcu

  std::string power_rule = "equal";     // equal | grpa | proposed
  double power_total = 0.0;

  double sweep_start_db = 0.0;
  double sweep_stop_db = 0.0;
  double sweep_step_db = 0.0;           // 0 = unset

  std::uint64_t pdf_samples = 1000000;
  std::uint64_t rate_samples = 100000;
  std::uint64_t tuples = 100000;
  int bins = 100;
  std::uint64_t seed = 12345;

  double phi_min = -15.0;
  double phi_max = 15.0;

  bool per_user_gains = false;          // mobility allocation refinement
  std::string output_dir = "out";

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text,
                                      const std::string& origin = "config");

  // full echo, parseable by from_string and stable across round trips
  std::string serialize() const;

  // verb-scoped invariant enforcement; throws config_error
  void validate(Verb verb) const;
};

}  // namespace nomavlc
