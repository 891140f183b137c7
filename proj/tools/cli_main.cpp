#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nomavlc/commands.hpp"
#include "nomavlc/config.hpp"
#include "nomavlc/errors.hpp"
#include "nomavlc/presets.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config_path, "experiment config file");
  sub->add_option("--preset", opt.preset, "built-in experiment preset")
      ->check(CLI::IsMember(nomavlc::preset_names()));
  sub->add_option("--seed", opt.seed, "root RNG seed (default 12345)");
  sub->add_option("--out", opt.out_dir, "output directory");
}

int dispatch(nomavlc::Verb verb, const Options& opt) {
  using nomavlc::ExperimentConfig;
  if (!opt.config_path.empty() && !opt.preset.empty())
    throw nomavlc::config_error("--config and --preset are mutually exclusive");
  if (opt.config_path.empty() && opt.preset.empty())
    throw nomavlc::config_error("one of --config or --preset is required");

  ExperimentConfig cfg;
  if (!opt.preset.empty()) {
    if (!nomavlc::preset_allows(opt.preset, verb))
      throw nomavlc::config_error(
          "preset '" + opt.preset + "' belongs to command '" +
          nomavlc::to_string(nomavlc::preset_verb(opt.preset)) + "'");
    cfg = nomavlc::preset_config(opt.preset);
  } else {
    cfg = ExperimentConfig::from_file(opt.config_path);
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  return nomavlc::run_command(verb, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-validating NOMA-VLC downlink calculator"};
  app.require_subcommand(1);

  Options opt;
  std::optional<nomavlc::Verb> chosen;
  const std::pair<const char*, nomavlc::Verb> verbs[] = {
      {"noise-pdf", nomavlc::Verb::noise_pdf},
      {"rate-static", nomavlc::Verb::rate_static},
      {"rate-mobility", nomavlc::Verb::rate_mobility},
      {"allocate", nomavlc::Verb::allocate},
      {"sweep", nomavlc::Verb::sweep},
  };
  for (const auto& [name, verb] : verbs) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, opt);
    sub->parse_complete_callback([&chosen, verb = verb]() { chosen = verb; });
  }

  try {
    app.parse(argc, argv);
    if (!chosen) throw nomavlc::config_error("no command selected");
    return dispatch(*chosen, opt);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const nomavlc::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
