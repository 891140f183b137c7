#include "nomavlc/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nomavlc {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << what;
  throw config_error(os.str());
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& origin, int line,
                        const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail(origin, line,
         "key '" + key + "': expected an unsigned integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(origin, line, "key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& origin, int line,
                               const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(origin, line, "key '" + key + "': empty list entry");
    out.push_back(parse_double(origin, line, key, item));
  }
  if (out.empty()) fail(origin, line, "key '" + key + "': empty list");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

Verb verb_from_string(const std::string& name) {
  if (name == "noise-pdf") return Verb::noise_pdf;
  if (name == "rate-static") return Verb::rate_static;
  if (name == "rate-mobility") return Verb::rate_mobility;
  if (name == "allocate") return Verb::allocate;
  if (name == "sweep") return Verb::sweep;
  throw config_error("unknown command '" + name + "'");
}

std::string to_string(Verb verb) {
  switch (verb) {
    case Verb::noise_pdf: return "noise-pdf";
    case Verb::rate_static: return "rate-static";
    case Verb::rate_mobility: return "rate-mobility";
    case Verb::allocate: return "allocate";
    case Verb::sweep: return "sweep";
  }
  return "unknown";
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path);
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text,
                                               const std::string& origin) {
  ExperimentConfig cfg;
  using Setter = std::function<void(int, const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"noise.alpha", [&](int l, const std::string& k, const std::string& v) {
         cfg.noise.alpha = parse_double(origin, l, k, v); }},
      {"noise.beta", [&](int l, const std::string& k, const std::string& v) {
         cfg.noise.beta = parse_double(origin, l, k, v); }},
      {"noise.nu", [&](int l, const std::string& k, const std::string& v) {
         cfg.noise.nu = static_cast<int>(parse_int(origin, l, k, v)); }},
      {"noise.truncation_m", [&](int l, const std::string& k, const std::string& v) {
         cfg.noise.truncation_m = static_cast<int>(parse_int(origin, l, k, v)); }},
      {"channel.mode", [&](int, const std::string&, const std::string& v) {
         cfg.channel_mode = v; }},
      {"channel.gains", [&](int l, const std::string& k, const std::string& v) {
         cfg.gains = parse_list(origin, l, k, v); }},
      {"channel.h_min", [&](int l, const std::string& k, const std::string& v) {
         cfg.h_min = parse_double(origin, l, k, v); }},
      {"channel.h_max", [&](int l, const std::string& k, const std::string& v) {
         cfg.h_max = parse_double(origin, l, k, v); }},
      {"channel.half_angle_deg", [&](int l, const std::string& k, const std::string& v) {
         cfg.half_angle_deg = parse_double(origin, l, k, v); }},
      {"channel.led_height", [&](int l, const std::string& k, const std::string& v) {
         cfg.led_height = parse_double(origin, l, k, v); }},
      {"channel.radii", [&](int l, const std::string& k, const std::string& v) {
         cfg.radii = parse_list(origin, l, k, v); }},
      {"users.count", [&](int l, const std::string& k, const std::string& v) {
         cfg.user_count = static_cast<int>(parse_int(origin, l, k, v)); }},
      {"users.thresholds", [&](int l, const std::string& k, const std::string& v) {
         cfg.thresholds = parse_list(origin, l, k, v); }},
      {"power.rule", [&](int, const std::string&, const std::string& v) {
         cfg.power_rule = v; }},
      {"power.total", [&](int l, const std::string& k, const std::string& v) {
         cfg.power_total = parse_double(origin, l, k, v); }},
      {"sweep.start_db", [&](int l, const std::string& k, const std::string& v) {
         cfg.sweep_start_db = parse_double(origin, l, k, v); }},
      {"sweep.stop_db", [&](int l, const std::string& k, const std::string& v) {
         cfg.sweep_stop_db = parse_double(origin, l, k, v); }},
      {"sweep.step_db", [&](int l, const std::string& k, const std::string& v) {
         cfg.sweep_step_db = parse_double(origin, l, k, v); }},
      {"mc.pdf_samples", [&](int l, const std::string& k, const std::string& v) {
         cfg.pdf_samples = parse_u64(origin, l, k, v); }},
      {"mc.rate_samples", [&](int l, const std::string& k, const std::string& v) {
         cfg.rate_samples = parse_u64(origin, l, k, v); }},
      {"mc.tuples", [&](int l, const std::string& k, const std::string& v) {
         cfg.tuples = parse_u64(origin, l, k, v); }},
      {"mc.bins", [&](int l, const std::string& k, const std::string& v) {
         cfg.bins = static_cast<int>(parse_int(origin, l, k, v)); }},
      {"mc.seed", [&](int l, const std::string& k, const std::string& v) {
         cfg.seed = parse_u64(origin, l, k, v); }},
      {"grid.phi_min", [&](int l, const std::string& k, const std::string& v) {
         cfg.phi_min = parse_double(origin, l, k, v); }},
      {"grid.phi_max", [&](int l, const std::string& k, const std::string& v) {
         cfg.phi_max = parse_double(origin, l, k, v); }},
      {"mobility.per_user_gains", [&](int l, const std::string& k, const std::string& v) {
         cfg.per_user_gains = parse_bool(origin, l, k, v); }},
      {"output.dir", [&](int, const std::string&, const std::string& v) {
         cfg.output_dir = v; }},
  };

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      fail(origin, line, "expected 'key = value', got '" + entry + "'");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) fail(origin, line, "missing key before '='");
    const auto it = setters.find(key);
    if (it == setters.end()) fail(origin, line, "unknown key '" + key + "'");
    if (value.empty()) fail(origin, line, "key '" + key + "': missing value");
    it->second(line, key, value);
  }
  return cfg;
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << "noise.alpha = " << fmt(noise.alpha) << "\n";
  os << "noise.beta = " << fmt(noise.beta) << "\n";
  os << "noise.nu = " << noise.nu << "\n";
  os << "noise.truncation_m = " << noise.truncation_m << "\n";
  os << "channel.mode = " << channel_mode << "\n";
  if (!gains.empty()) os << "channel.gains = " << fmt(gains) << "\n";
  if (h_max > 0.0) {
    os << "channel.h_min = " << fmt(h_min) << "\n";
    os << "channel.h_max = " << fmt(h_max) << "\n";
  }
  if (half_angle_deg > 0.0)
    os << "channel.half_angle_deg = " << fmt(half_angle_deg) << "\n";
  if (led_height > 0.0) os << "channel.led_height = " << fmt(led_height) << "\n";
  if (!radii.empty()) os << "channel.radii = " << fmt(radii) << "\n";
  if (user_count > 0) os << "users.count = " << user_count << "\n";
  if (!thresholds.empty()) os << "users.thresholds = " << fmt(thresholds) << "\n";
  os << "power.rule = " << power_rule << "\n";
  if (power_total > 0.0) os << "power.total = " << fmt(power_total) << "\n";
  if (sweep_step_db > 0.0) {
    os << "sweep.start_db = " << fmt(sweep_start_db) << "\n";
    os << "sweep.stop_db = " << fmt(sweep_stop_db) << "\n";
    os << "sweep.step_db = " << fmt(sweep_step_db) << "\n";
  }
  os << "mc.pdf_samples = " << pdf_samples << "\n";
  os << "mc.rate_samples = " << rate_samples << "\n";
  os << "mc.tuples = " << tuples << "\n";
  os << "mc.bins = " << bins << "\n";
  os << "mc.seed = " << seed << "\n";
  os << "grid.phi_min = " << fmt(phi_min) << "\n";
  os << "grid.phi_max = " << fmt(phi_max) << "\n";
  os << "mobility.per_user_gains = " << (per_user_gains ? "true" : "false") << "\n";
  os << "output.dir = " << output_dir << "\n";
  return os.str();
}

void ExperimentConfig::validate(Verb verb) const {
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw config_error(what);
  };
  require(noise.alpha > 0.0, "noise.alpha must be > 0");
  require(noise.beta >= 0.0, "noise.beta must be >= 0");
  require(noise.nu >= 1, "noise.nu must be >= 1");
  require(noise.truncation_m >= 1, "noise.truncation_m must be >= 1");
  require(channel_mode == "static" || channel_mode == "mobility",
          "channel.mode must be 'static' or 'mobility'");
  require(power_rule == "equal" || power_rule == "grpa" ||
              power_rule == "proposed",
          "power.rule must be 'equal', 'grpa', or 'proposed'");
  for (double g : gains) require(g > 0.0, "channel.gains must be > 0");
  for (std::size_t i = 0; i + 1 < gains.size(); ++i)
    require(gains[i] <= gains[i + 1], "channel.gains must be ascending");
  for (double t : thresholds)
    require(t >= 0.0, "users.thresholds must be >= 0");

  if (verb == Verb::rate_static)
    require(channel_mode == "static", "rate-static needs channel.mode = static");
  if (verb == Verb::rate_mobility)
    require(channel_mode == "mobility",
            "rate-mobility needs channel.mode = mobility");

  const bool needs_channel = verb != Verb::noise_pdf;
  if (needs_channel) {
    require(user_count >= 1, "users.count must be >= 1");
    if (channel_mode == "static") {
      require(!gains.empty() || !radii.empty(),
              "static mode needs channel.gains or channel.radii");
      require(gains.empty() || radii.empty(),
              "channel.gains and channel.radii are mutually exclusive");
      if (!radii.empty()) {
        require(led_height > 0.0, "channel.radii needs channel.led_height");
        require(half_angle_deg > 0.0 && half_angle_deg < 90.0,
                "channel.radii needs channel.half_angle_deg in (0, 90)");
        require(static_cast<int>(radii.size()) == user_count,
                "channel.radii length must equal users.count");
      } else {
        require(static_cast<int>(gains.size()) == user_count,
                "channel.gains length must equal users.count");
      }
    } else {
      require(h_min > 0.0 && h_max > h_min,
              "mobility mode needs 0 < channel.h_min < channel.h_max");
      require(half_angle_deg > 0.0 && half_angle_deg < 90.0,
              "mobility mode needs channel.half_angle_deg in (0, 90)");
    }
  }

  const bool needs_thresholds =
      verb == Verb::allocate || verb == Verb::sweep ||
      ((verb == Verb::rate_static || verb == Verb::rate_mobility) &&
       power_rule == "proposed");
  if (needs_thresholds)
    require(static_cast<int>(thresholds.size()) == user_count,
            "users.thresholds length must equal users.count");

  if (verb == Verb::allocate)
    require(power_total > 0.0, "allocate needs power.total > 0");

  const bool needs_sweep = verb == Verb::rate_static ||
                           verb == Verb::rate_mobility || verb == Verb::sweep;
  if (needs_sweep) {
    require(sweep_step_db > 0.0, "sweep.step_db must be > 0");
    require(sweep_stop_db >= sweep_start_db,
            "sweep.stop_db must be >= sweep.start_db");
  }

  if (verb == Verb::noise_pdf) {
    require(pdf_samples >= 1, "mc.pdf_samples must be >= 1");
    require(bins >= 2, "mc.bins must be >= 2");
    require(phi_max > phi_min, "grid.phi_max must be > grid.phi_min");
  }
  if (verb == Verb::rate_static)
    require(rate_samples >= 100000, "mc.rate_samples must be >= 100000");
  if (verb == Verb::rate_mobility)
    require(tuples >= 1, "mc.tuples must be >= 1");
  require(!output_dir.empty(), "output.dir must not be empty");
}

}  // namespace nomavlc
