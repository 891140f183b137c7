#include "nomavlc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include "nomavlc/allocate.hpp"
#include "nomavlc/channel.hpp"
#include "nomavlc/csvio.hpp"
#include "nomavlc/errors.hpp"
#include "nomavlc/noise.hpp"
#include "nomavlc/presets.hpp"
#include "nomavlc/quad.hpp"
#include "nomavlc/rate.hpp"

namespace nomavlc {
namespace {

namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// deterministic per-point stream regardless of completion order
std::uint64_t point_seed(std::uint64_t root, std::size_t index) {
  return mix64(root + (index + 1) * 0x9e3779b97f4a7c15ull);
}

std::vector<double> snr_grid(const ExperimentConfig& cfg) {
  std::vector<double> grid;
  const double eps = 1e-9 * std::max(1.0, std::abs(cfg.sweep_stop_db));
  for (double s = cfg.sweep_start_db; s <= cfg.sweep_stop_db + eps;
       s += cfg.sweep_step_db)
    grid.push_back(s);
  return grid;
}

double noise_floor(const NoiseParams& noise) {
  return noise.alpha * noise.alpha + noise.beta * noise.beta;
}

double budget_at(const ExperimentConfig& cfg, double snr_db) {
  return noise_floor(cfg.noise) * std::pow(10.0, snr_db / 10.0);
}

std::vector<double> static_gains(const ExperimentConfig& cfg) {
  if (!cfg.gains.empty()) return cfg.gains;
  return gains_from_radii(cfg.radii, cfg.led_height, cfg.half_angle_deg);
}

MobilityModel build_model(const ExperimentConfig& cfg) {
  const double m = lambertian_order(cfg.half_angle_deg * kPi / 180.0);
  return MobilityModel::from_bounds(cfg.h_min, cfg.h_max, m);
}

std::vector<double> mobility_effective_gains(const MobilityModel& model,
                                             int users, bool per_user) {
  std::vector<double> g(users);
  if (per_user) {
    for (int u = 1; u <= users; ++u)
      g[u - 1] = std::sqrt(ordered_moment(model, users, u, 2.0));
  } else {
    const double rms = std::sqrt(mean_square_gain(model));
    for (double& v : g) v = rms;
  }
  return g;
}

std::vector<double> ordered_mean_gains(const MobilityModel& model, int users) {
  std::vector<double> g(users);
  for (int u = 1; u <= users; ++u)
    g[u - 1] = ordered_moment(model, users, u, 1.0);
  return g;
}

fs::path prepare_outdir(const ExperimentConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_echo(const ExperimentConfig& cfg, const fs::path& dir) {
  csv::write_text(dir / "config_echo.cfg", cfg.serialize());
}

void write_diagnostics(const fs::path& dir,
                       const std::vector<std::pair<std::string, std::string>>&
                           entries) {
  std::ostringstream os;
  for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
  csv::write_text(dir / "diagnostics.txt", os.str());
}

bool infeasible(const AllocationResult& r) {
  return !r.converged && r.diagnostic.rfind("infeasible", 0) == 0;
}

bool exhausted(const AllocationResult& r) {
  return !r.converged && !infeasible(r);
}

QosSpec make_qos(const ExperimentConfig& cfg, double total) {
  QosSpec qos;
  qos.thresholds = cfg.thresholds;
  qos.total_power = total;
  return qos;
}

PowerVector equal_split(int users, double total) {
  return make_power_vector(std::vector<double>(users, total / users));
}

double chi2_log_pdf(double w, int nu) {
  const double half = 0.5 * nu;
  return (half - 1.0) * std::log(w) - 0.5 * w - half * kLn2 -
         std::lgamma(half);
}

// differential entropy (nats) of  N(0, a^2) + beta*(w - nu)/sqrt(2 nu),
// evaluated by nested quadrature with fixed windows
double composite_entropy(double alpha_eff, double beta, int nu) {
  if (beta == 0.0)
    return 0.5 * std::log(2.0 * kPi * std::exp(1.0) * alpha_eff * alpha_eff);
  const double bp = beta / std::sqrt(2.0 * nu);
  const double w_hi = nu + 26.0 * std::sqrt(2.0 * nu) + 10.0;
  QuadratureSpec inner;
  inner.abs_tol = 1e-13;
  inner.rel_tol = 1e-10;
  const auto density = [&](double y) {
    return integrate(
               [&](double w) {
                 const double z = (y - bp * (w - nu)) / alpha_eff;
                 return std::exp(chi2_log_pdf(w, nu) - 0.5 * z * z);
               },
               1e-12, w_hi, inner) /
           (std::sqrt(2.0 * kPi) * alpha_eff);
  };
  const double sigma = std::sqrt(alpha_eff * alpha_eff + beta * beta);
  const double y_lo = -16.0 * sigma - bp * nu - 1.0;
  const double y_hi = 16.0 * sigma + bp * (w_hi - nu) + 1.0;
  QuadratureSpec outer;
  outer.abs_tol = 1e-11;
  outer.rel_tol = 1e-9;
  const double h = integrate(
      [&](double y) {
        const double f = density(y);
        if (!(f > 1e-280)) return 0.0;
        return -f * std::log(f);
      },
      y_lo, y_hi, outer);
  return h;
}

// entropy-difference evaluation of the per-layer rate, bpcu
double rate_entropy_quadrature(int layer, const PowerVector& p,
                               const std::vector<double>& h,
                               const NoiseParams& noise) {
  const double g2 = h[layer - 1] * h[layer - 1];
  double interf = 0.0;
  for (std::size_t l = layer; l < p.powers.size(); ++l) interf += p.powers[l];
  const double a2 = noise.alpha * noise.alpha;
  const double signal = p.powers[layer - 1];
  if (signal == 0.0) return 0.0;
  // transmit-referred units, ambient variance doubled; matches the
  // simulated mixtures and keeps the analytic correction term honest
  const double in = interf + a2 / g2;
  const double beta_eff = std::sqrt(2.0) * noise.beta;
  const double hy = composite_entropy(std::sqrt(signal + in), beta_eff,
                                      noise.nu);
  const double hp = composite_entropy(std::sqrt(in), beta_eff, noise.nu);
  return (hy - hp) / kLn2;
}

std::string gnuplot_header() {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n";
}

struct RateRow {
  double analytic = 0.0;
  double quadrature = 0.0;
  double mc = 0.0;
};

struct RatePoint {
  double snr_db = 0.0;
  std::vector<RateRow> rows;
  bool flagged = false;
  std::string note;
};

// per-user breakdown at the last sweep point, one block per method
void write_rate_report(const fs::path& dir, const RatePoint& pt) {
  csv::Table report;
  report.comments.push_back("snr_db " + csv::format_double(pt.snr_db));
  report.header = {"user", "rate_bpcu", "method"};
  const auto block = [&](RateMethod method, auto pick) {
    double sum = 0.0;
    for (std::size_t u = 0; u < pt.rows.size(); ++u) {
      const double value = pick(pt.rows[u]);
      report.add_row({csv::cell(u + 1), csv::cell(value),
                      csv::cell(to_string(method))});
      sum += value;
    }
    report.add_row({csv::cell(std::string("sum")), csv::cell(sum),
                    csv::cell(to_string(method))});
  };
  block(RateMethod::analytic, [](const RateRow& r) { return r.analytic; });
  block(RateMethod::quadrature, [](const RateRow& r) { return r.quadrature; });
  block(RateMethod::monte_carlo, [](const RateRow& r) { return r.mc; });
  csv::write_table(dir / "rate_report.csv", report);
}

// --- noise-pdf ------------------------------------------------------------

int cmd_noise_pdf(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  write_echo(cfg, dir);

  const auto samples = sample_phi(cfg.noise, cfg.pdf_samples, cfg.seed);
  const auto hist = histogram(samples, cfg.bins);

  csv::Table hist_csv;
  hist_csv.header = {"bin_left", "bin_right", "density"};
  for (std::size_t i = 0; i < hist.densities.size(); ++i)
    hist_csv.add_row({csv::cell(hist.bin_edges[i]),
                      csv::cell(hist.bin_edges[i + 1]),
                      csv::cell(hist.densities[i])});
  csv::write_table(dir / "histogram.csv", hist_csv);

  // four-way comparison at the bin centers inside the requested window;
  // pdf_series may refuse (divergent regime), which aborts the command
  csv::Table cmp;
  cmp.header = {"phi", "empirical", "series_m10", "high_nu", "oracle"};
  double l1_series = 0.0, l1_high_nu = 0.0, l1_oracle = 0.0;
  double sup_window = 0.0;
  for (std::size_t i = 0; i < hist.densities.size(); ++i) {
    const double left = hist.bin_edges[i];
    const double right = hist.bin_edges[i + 1];
    const double center = 0.5 * (left + right);
    const double width = right - left;
    const double emp = hist.densities[i];
    const double series = pdf_series(cfg.noise, center);
    const double high_nu = pdf_high_nu(cfg.noise, center);
    const double oracle = pdf_oracle(cfg.noise, center);
    l1_series += std::abs(emp - series) * width;
    l1_high_nu += std::abs(emp - high_nu) * width;
    l1_oracle += std::abs(emp - oracle) * width;
    if (center >= cfg.phi_min && center <= cfg.phi_max) {
      sup_window = std::max(sup_window, std::abs(emp - series));
      cmp.add_row({csv::cell(center), csv::cell(emp), csv::cell(series),
                   csv::cell(high_nu), csv::cell(oracle)});
    }
  }
  csv::write_table(dir / "pdf_comparison.csv", cmp);

  std::cout << "samples = " << samples.size() << ", bins = "
            << hist.densities.size() << "\n";
  std::cout << "L1(empirical, series)  = " << csv::format_double(l1_series)
            << "\n";
  std::cout << "L1(empirical, high_nu) = " << csv::format_double(l1_high_nu)
            << "\n";
  std::cout << "L1(empirical, oracle)  = " << csv::format_double(l1_oracle)
            << "\n";
  std::cout << "sup|empirical - series| on [" << cfg.phi_min << ", "
            << cfg.phi_max << "] = " << csv::format_double(sup_window) << "\n";

  write_diagnostics(dir, {{"l1_empirical_series", csv::format_double(l1_series)},
                          {"l1_empirical_high_nu", csv::format_double(l1_high_nu)},
                          {"l1_empirical_oracle", csv::format_double(l1_oracle)},
                          {"sup_empirical_series", csv::format_double(sup_window)},
                          {"sample_count", std::to_string(samples.size())}});

  csv::write_text(dir / "plot.gp",
                  gnuplot_header() +
                      "plot 'pdf_comparison.csv' using 1:2 with steps, \\\n"
                      "     '' using 1:3 with lines, \\\n"
                      "     '' using 1:4 with lines, \\\n"
                      "     '' using 1:5 with lines\n");
  return 0;
}

// --- rate-static / rate-mobility -------------------------------------------

// powers for the configured rule at one sweep point; gains_for_grpa lets the
// mobility path rank by ordered-mean gains
PowerVector rule_powers(const ExperimentConfig& cfg, double total,
                        const std::vector<double>& alloc_gains,
                        const std::vector<double>& grpa_gains,
                        AllocationResult* alloc_out) {
  if (cfg.power_rule == "equal") return equal_split(cfg.user_count, total);
  if (cfg.power_rule == "grpa") return grpa(grpa_gains, total);
  const AllocationResult res =
      allocate_static(alloc_gains, make_qos(cfg, total), cfg.noise);
  if (alloc_out) *alloc_out = res;
  return res.powers;
}

int cmd_rate_static(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  write_echo(cfg, dir);
  const auto h = static_gains(cfg);
  const auto grid = snr_grid(cfg);

  const auto eval_point = [&](std::size_t i) {
    RatePoint pt;
    pt.snr_db = grid[i];
    const double total = budget_at(cfg, grid[i]);
    AllocationResult alloc;
    const PowerVector p = rule_powers(cfg, total, h, h, &alloc);
    if (cfg.power_rule == "proposed") {
      if (exhausted(alloc))
        throw convergence_error("allocation failed to converge at snr_db = " +
                                csv::format_double(grid[i]));
      if (infeasible(alloc)) {
        pt.flagged = true;
        pt.note = alloc.diagnostic;
      }
    }
    const std::uint64_t ps = point_seed(cfg.seed, i);
    pt.rows.resize(cfg.user_count);
    for (int u = 1; u <= cfg.user_count; ++u) {
      RateRow& row = pt.rows[u - 1];
      row.analytic = rate_static(u, p, h, cfg.noise);
      row.quadrature = rate_entropy_quadrature(u, p, h, cfg.noise);
      row.mc = mc_rate_entropy(u, p, h, cfg.noise, cfg.rate_samples,
                               mix64(ps + u));
    }
    return pt;
  };

  std::vector<std::future<RatePoint>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    jobs.push_back(std::async(std::launch::async, eval_point, i));

  csv::Table table;
  table.header = {"snr_db", "user", "rate_analytic", "rate_quadrature",
                  "rate_mc"};
  RatePoint last;
  for (auto& job : jobs) {
    const RatePoint pt = job.get();
    if (pt.flagged)
      table.comments.push_back("snr_db " + csv::format_double(pt.snr_db) +
                               ": " + pt.note);
    double sum_a = 0.0, sum_mc = 0.0;
    for (int u = 1; u <= cfg.user_count; ++u) {
      const RateRow& row = pt.rows[u - 1];
      table.add_row({csv::cell(pt.snr_db), csv::cell(u),
                     csv::cell(row.analytic), csv::cell(row.quadrature),
                     csv::cell(row.mc)});
      sum_a += row.analytic;
      sum_mc += row.mc;
    }
    std::cout << "snr_db = " << pt.snr_db
              << "  sum_analytic = " << csv::format_double(sum_a)
              << "  sum_mc = " << csv::format_double(sum_mc) << "\n";
    last = pt;
  }
  csv::write_table(dir / "rates.csv", table);
  write_rate_report(dir, last);
  csv::write_text(dir / "plot.gp",
                  gnuplot_header() +
                      "plot 'rates.csv' using 1:($2 == 1 ? $3 : 1/0) with "
                      "linespoints, \\\n     '' using 1:($2 == 1 ? $5 : 1/0) "
                      "with points\n");
  return 0;
}

int cmd_rate_mobility(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  write_echo(cfg, dir);
  const MobilityModel model = build_model(cfg);
  const auto grid = snr_grid(cfg);
  const auto alloc_gains =
      mobility_effective_gains(model, cfg.user_count, cfg.per_user_gains);
  const auto grpa_gains = ordered_mean_gains(model, cfg.user_count);

  const auto eval_point = [&](std::size_t i) {
    RatePoint pt;
    pt.snr_db = grid[i];
    const double total = budget_at(cfg, grid[i]);
    AllocationResult alloc;
    PowerVector p;
    if (cfg.power_rule == "equal") {
      p = equal_split(cfg.user_count, total);
    } else if (cfg.power_rule == "grpa") {
      p = grpa(grpa_gains, total);
    } else {
      alloc = allocate_mobility(model, cfg.user_count, make_qos(cfg, total),
                                cfg.noise, cfg.per_user_gains);
      if (exhausted(alloc))
        throw convergence_error("allocation failed to converge at snr_db = " +
                                csv::format_double(grid[i]));
      if (infeasible(alloc)) {
        pt.flagged = true;
        pt.note = alloc.diagnostic;
      }
      p = alloc.powers;
    }
    const std::uint64_t ps = point_seed(cfg.seed, i);
    pt.rows.resize(cfg.user_count);
    for (int u = 1; u <= cfg.user_count; ++u) {
      RateRow& row = pt.rows[u - 1];
      const MobilityRate mr =
          expected_rate_user(model, cfg.user_count, u, p, cfg.noise);
      row.analytic = mr.closed_form;
      row.quadrature = mr.quadrature;
      row.mc = mc_mobility_rate(model, cfg.user_count, u, p, cfg.noise,
                                cfg.tuples, mix64(ps + u));
    }
    return pt;
  };

  std::vector<std::future<RatePoint>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    jobs.push_back(std::async(std::launch::async, eval_point, i));

  csv::Table table;
  table.header = {"snr_db", "user", "rate_analytic", "rate_quadrature",
                  "rate_mc"};
  RatePoint last;
  for (auto& job : jobs) {
    const RatePoint pt = job.get();
    if (pt.flagged)
      table.comments.push_back("snr_db " + csv::format_double(pt.snr_db) +
                               ": " + pt.note);
    double sum_q = 0.0, sum_mc = 0.0;
    for (int u = 1; u <= cfg.user_count; ++u) {
      const RateRow& row = pt.rows[u - 1];
      table.add_row({csv::cell(pt.snr_db), csv::cell(u),
                     csv::cell(row.analytic), csv::cell(row.quadrature),
                     csv::cell(row.mc)});
      sum_q += row.quadrature;
      sum_mc += row.mc;
    }
    std::cout << "snr_db = " << pt.snr_db
              << "  sum_quadrature = " << csv::format_double(sum_q)
              << "  sum_mc = " << csv::format_double(sum_mc) << "\n";
    last = pt;
  }
  csv::write_table(dir / "rates.csv", table);
  write_rate_report(dir, last);

  // sampled-gain export for downstream inspection
  const auto gains = sample_gains(model, 1000, mix64(cfg.seed ^ 0x67616e73ull));
  csv::Table gcsv;
  gcsv.header = {"sample_index", "h"};
  for (std::size_t i = 0; i < gains.size(); ++i)
    gcsv.add_row({csv::cell(i), csv::cell(gains[i])});
  csv::write_table(dir / "gains_sample.csv", gcsv);

  csv::write_text(dir / "plot.gp",
                  gnuplot_header() +
                      "plot 'rates.csv' using 1:($2 == 1 ? $4 : 1/0) with "
                      "linespoints, \\\n     '' using 1:($2 == 1 ? $5 : 1/0) "
                      "with points\n");
  return 0;
}

// --- allocate ---------------------------------------------------------------

// the four comparison curves at one budget
struct CurveSet {
  double proposed = 0.0;
  double grpa_rate = 0.0;
  double sh = 0.0;
  double awgn = 0.0;
  AllocationResult prop;
};

CurveSet static_curves(const ExperimentConfig& cfg,
                       const std::vector<double>& h, double total) {
  CurveSet out;
  const QosSpec qos = make_qos(cfg, total);
  out.prop = allocate_static(h, qos, cfg.noise);
  const AllocationResult sh = allocate_sh_baseline(h, qos, cfg.noise);
  const PowerVector gp = grpa(h, total);
  NoiseParams quiet = cfg.noise;
  quiet.beta = 0.0;
  for (int u = 1; u <= cfg.user_count; ++u) {
    out.proposed += rate_static(u, out.prop.powers, h, cfg.noise);
    out.grpa_rate += rate_static(u, gp, h, cfg.noise);
    out.sh += rate_static(u, sh.powers, h, cfg.noise);
    out.awgn += rate_static(u, sh.powers, h, quiet);
  }
  return out;
}

CurveSet mobility_curves(const ExperimentConfig& cfg,
                         const MobilityModel& model, double total) {
  CurveSet out;
  const QosSpec qos = make_qos(cfg, total);
  const auto alloc_gains =
      mobility_effective_gains(model, cfg.user_count, cfg.per_user_gains);
  out.prop = allocate_mobility(model, cfg.user_count, qos, cfg.noise,
                               cfg.per_user_gains);
  const AllocationResult sh = allocate_sh_baseline(alloc_gains, qos, cfg.noise);
  const PowerVector gp = grpa(ordered_mean_gains(model, cfg.user_count), total);
  NoiseParams quiet = cfg.noise;
  quiet.beta = 0.0;
  for (int u = 1; u <= cfg.user_count; ++u) {
    out.proposed +=
        expected_rate_user(model, cfg.user_count, u, out.prop.powers, cfg.noise)
            .quadrature;
    out.grpa_rate +=
        expected_rate_user(model, cfg.user_count, u, gp, cfg.noise).quadrature;
    out.sh +=
        expected_rate_user(model, cfg.user_count, u, sh.powers, cfg.noise)
            .quadrature;
    out.awgn +=
        expected_rate_user(model, cfg.user_count, u, sh.powers, quiet)
            .quadrature;
  }
  return out;
}

int cmd_allocate(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  write_echo(cfg, dir);
  const bool mobile = cfg.channel_mode == "mobility";
  const double total = cfg.power_total;
  const double snr_db = 10.0 * std::log10(total / noise_floor(cfg.noise));

  CurveSet curves;
  if (mobile) {
    curves = mobility_curves(cfg, build_model(cfg), total);
  } else {
    curves = static_curves(cfg, static_gains(cfg), total);
  }
  const AllocationResult& res = curves.prop;

  csv::Table summary;
  summary.header = {"snr_db", "proposed", "grpa", "sh_baseline",
                    "awgn_reference"};
  if (!res.diagnostic.empty()) summary.comments.push_back(res.diagnostic);
  summary.add_row({csv::cell(snr_db), csv::cell(curves.proposed),
                   csv::cell(curves.grpa_rate), csv::cell(curves.sh),
                   csv::cell(curves.awgn)});
  csv::write_table(dir / "allocation.csv", summary);

  csv::Table powers;
  powers.header = {"user", "power", "achieved_rate_bpcu"};
  if (!res.diagnostic.empty()) powers.comments.push_back(res.diagnostic);
  double budget_used = 0.0;
  for (int u = 1; u <= cfg.user_count; ++u) {
    powers.add_row({csv::cell(u), csv::cell(res.powers.powers[u - 1]),
                    csv::cell(res.achieved_rates[u - 1])});
    budget_used += res.powers.powers[u - 1];
  }
  csv::write_table(dir / "powers.csv", powers);

  double min_residual = res.constraint_residuals.empty()
                            ? 0.0
                            : *std::min_element(res.constraint_residuals.begin(),
                                                res.constraint_residuals.end());
  write_diagnostics(
      dir,
      {{"converged", res.converged ? "true" : "false"},
       {"iterations", std::to_string(res.iterations)},
       {"budget_residual", csv::format_double(budget_used - total)},
       {"min_qos_residual_bpcu", csv::format_double(min_residual)},
       {"proposed_sum_bpcu", csv::format_double(curves.proposed)},
       {"grpa_sum_bpcu", csv::format_double(curves.grpa_rate)},
       {"sh_baseline_sum_bpcu", csv::format_double(curves.sh)},
       {"awgn_reference_sum_bpcu", csv::format_double(curves.awgn)},
       {"diagnostic", res.diagnostic.empty() ? "ok" : res.diagnostic}});

  std::cout << "snr_db = " << csv::format_double(snr_db)
            << "  converged = " << (res.converged ? "true" : "false")
            << "  iterations = " << res.iterations << "\n";
  for (int u = 1; u <= cfg.user_count; ++u)
    std::cout << "user " << u << ": power = "
              << csv::format_double(res.powers.powers[u - 1])
              << ", rate = " << csv::format_double(res.achieved_rates[u - 1])
              << " bpcu\n";
  if (!res.diagnostic.empty()) std::cout << res.diagnostic << "\n";
  std::cout << "sum rates (bpcu): proposed = "
            << csv::format_double(curves.proposed)
            << ", grpa = " << csv::format_double(curves.grpa_rate)
            << ", sh_baseline = " << csv::format_double(curves.sh)
            << ", awgn_reference = " << csv::format_double(curves.awgn) << "\n";

  csv::write_text(dir / "plot.gp",
                  gnuplot_header() +
                      "plot 'powers.csv' using 1:2 with boxes\n");
  return exhausted(res) ? 3 : 0;
}

}  // namespace

// --- sweep -------------------------------------------------------------------

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg) {
  const bool mobile = cfg.channel_mode == "mobility";
  const auto grid = snr_grid(cfg);
  std::vector<double> h;
  MobilityModel model = MobilityModel::from_bounds(1.0, 2.0, 1.0);
  if (mobile) {
    model = build_model(cfg);
  } else {
    h = static_gains(cfg);
  }

  const auto eval_point = [&](std::size_t i) {
    const double total = budget_at(cfg, grid[i]);
    const CurveSet curves = mobile ? mobility_curves(cfg, model, total)
                                   : static_curves(cfg, h, total);
    SweepPoint pt;
    pt.snr_db = grid[i];
    pt.proposed = curves.proposed;
    pt.grpa = curves.grpa_rate;
    pt.sh_baseline = curves.sh;
    pt.awgn_reference = curves.awgn;
    pt.flagged = !curves.prop.converged;
    pt.note = curves.prop.diagnostic;
    return pt;
  };

  std::vector<std::future<SweepPoint>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    jobs.push_back(std::async(std::launch::async, eval_point, i));
  std::vector<SweepPoint> points;
  for (auto& job : jobs) points.push_back(job.get());
  return points;
}

namespace {

int cmd_sweep(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_outdir(cfg);
  write_echo(cfg, dir);
  const auto points = sweep_points(cfg);

  csv::Table table;
  table.header = {"snr_db", "proposed", "grpa", "sh_baseline",
                  "awgn_reference"};
  bool any_exhausted = false;
  for (const auto& pt : points) {
    if (pt.flagged)
      table.comments.push_back("snr_db " + csv::format_double(pt.snr_db) +
                               ": " + pt.note);
    if (pt.flagged && pt.note.rfind("infeasible", 0) != 0)
      any_exhausted = true;
    table.add_row({csv::cell(pt.snr_db), csv::cell(pt.proposed),
                   csv::cell(pt.grpa), csv::cell(pt.sh_baseline),
                   csv::cell(pt.awgn_reference)});
    std::cout << "snr_db = " << pt.snr_db
              << "  proposed = " << csv::format_double(pt.proposed)
              << "  grpa = " << csv::format_double(pt.grpa)
              << "  sh_baseline = " << csv::format_double(pt.sh_baseline)
              << "  awgn_reference = " << csv::format_double(pt.awgn_reference)
              << (pt.flagged ? "  [flagged]" : "") << "\n";
  }
  csv::write_table(dir / "sumrate_sweep.csv", table);
  csv::write_text(dir / "plot.gp",
                  gnuplot_header() +
                      "plot 'sumrate_sweep.csv' using 1:2 with linespoints, \\\n"
                      "     '' using 1:3 with linespoints, \\\n"
                      "     '' using 1:4 with linespoints, \\\n"
                      "     '' using 1:5 with linespoints\n");
  return any_exhausted ? 3 : 0;
}

}  // namespace

int run_command(Verb verb, const ExperimentConfig& cfg) {
  cfg.validate(verb);
  switch (verb) {
    case Verb::noise_pdf: return cmd_noise_pdf(cfg);
    case Verb::rate_static: return cmd_rate_static(cfg);
    case Verb::rate_mobility: return cmd_rate_mobility(cfg);
    case Verb::allocate: return cmd_allocate(cfg);
    case Verb::sweep: return cmd_sweep(cfg);
  }
  throw config_error("unhandled command");
}

}  // namespace nomavlc
