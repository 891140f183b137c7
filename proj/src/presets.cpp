#include "nomavlc/presets.hpp"

#include <algorithm>
#include <cmath>

#include "nomavlc/channel.hpp"

namespace nomavlc {
namespace {

constexpr double kPi = 3.14159265358979323846;

void working_noise(ExperimentConfig& cfg) {
  cfg.noise.alpha = 2.0;
  cfg.noise.beta = 2.0 / 3.0;
  cfg.noise.nu = 10;
  cfg.noise.truncation_m = 10;
}

void static_cell(ExperimentConfig& cfg, double half_angle_deg) {
  cfg.channel_mode = "static";
  cfg.radii = {2.5, 2.0, 1.5, 1.0};
  cfg.led_height = 2.25;
  cfg.half_angle_deg = half_angle_deg;
  cfg.user_count = 4;
}

void mobility_cell(ExperimentConfig& cfg, double h_min, double h_max,
                   double half_angle_deg) {
  cfg.channel_mode = "mobility";
  cfg.h_min = h_min;
  cfg.h_max = h_max;
  cfg.half_angle_deg = half_angle_deg;
  cfg.user_count = 4;
}

void sweep_range(ExperimentConfig& cfg, double start, double stop,
                 double step) {
  cfg.sweep_start_db = start;
  cfg.sweep_stop_db = stop;
  cfg.sweep_step_db = step;
}

double budget_at_db(const ExperimentConfig& cfg, double snr_db) {
  const double n0 = cfg.noise.alpha * cfg.noise.alpha +
                    cfg.noise.beta * cfg.noise.beta;
  return n0 * std::pow(10.0, snr_db / 10.0);
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4",  "fig5", "fig6",
          "fig7", "fig8", "fig9", "fig10", "fig11"};
}

Verb preset_verb(const std::string& name) {
  if (name == "fig1") return Verb::noise_pdf;
  if (name == "fig2" || name == "fig3" || name == "fig4" || name == "fig5")
    return Verb::rate_static;
  if (name == "fig6" || name == "fig7" || name == "fig8" || name == "fig9")
    return Verb::rate_mobility;
  if (name == "fig10" || name == "fig11") return Verb::sweep;
  throw config_error("unknown preset '" + name + "'");
}

bool preset_allows(const std::string& name, Verb verb) {
  if (preset_verb(name) == verb) return true;
  return verb == Verb::allocate && (name == "fig10" || name == "fig11");
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  working_noise(cfg);
  cfg.output_dir = "out-" + name;

  if (name == "fig1") {
    cfg.pdf_samples = 1000000;
    cfg.bins = 100;
    cfg.phi_min = -15.0;
    cfg.phi_max = 15.0;
    return cfg;
  }
  if (name == "fig2" || name == "fig4") {
    static_cell(cfg, 50.0);
    sweep_range(cfg, 10.0, 30.0, 2.0);
    cfg.power_rule = (name == "fig2") ? "equal" : "grpa";
    return cfg;
  }
  if (name == "fig3" || name == "fig5") {
    static_cell(cfg, 60.0);
    sweep_range(cfg, 10.0, 30.0, 2.0);
    cfg.power_rule = (name == "fig3") ? "equal" : "grpa";
    return cfg;
  }
  if (name == "fig6" || name == "fig7" || name == "fig8" || name == "fig9") {
    const double span = (name == "fig6" || name == "fig7") ? 3.0 : 5.0;
    const double angle = (name == "fig6" || name == "fig8") ? 50.0 : 60.0;
    mobility_cell(cfg, 1.0, span, angle);
    sweep_range(cfg, 10.0, 30.0, 5.0);
    cfg.power_rule = "equal";
    cfg.tuples = 100000;
    return cfg;
  }
  if (name == "fig10") {
    static_cell(cfg, 50.0);
    sweep_range(cfg, 0.0, 30.0, 2.0);
    cfg.power_rule = "proposed";
    cfg.thresholds = {0.2, 0.6, 2.0, 5.0};
    cfg.power_total = budget_at_db(cfg, 20.0);
    return cfg;
  }
  if (name == "fig11") {
    mobility_cell(cfg, 1.0, 5.0, 60.0);
    sweep_range(cfg, 30.0, 48.0, 2.0);
    cfg.power_rule = "proposed";
    cfg.thresholds = {0.2, 0.6, 2.0, 5.0};
    cfg.power_total = budget_at_db(cfg, 20.0);
    cfg.per_user_gains = true;
    return cfg;
  }
  throw config_error("unknown preset '" + name + "'");
}

std::vector<double> gains_from_radii(const std::vector<double>& radii,
                                     double led_height,
                                     double half_angle_deg) {
  const double m = lambertian_order(half_angle_deg * kPi / 180.0);
  std::vector<double> raw(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double d2 = radii[i] * radii[i] + led_height * led_height;
    raw[i] = (m + 1.0) * std::pow(led_height, m + 1.0) /
             (2.0 * kPi * std::pow(d2, 0.5 * (m + 3.0)));
  }
  // normalize so the strongest link has unit gain; keeps beta^2 h^2
  // small against alpha^2, where the rate expansion is trustworthy
  const double strongest = *std::max_element(raw.begin(), raw.end());
  for (double& g : raw) g /= strongest;
  return raw;
}

}  // namespace nomavlc
