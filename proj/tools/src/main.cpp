// main.cpp — argument parsing and exit-code mapping for rabi-cf
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "rabicf/errors.hpp"

namespace {

// exit codes: 0 success, 1 internal failure, 2 bad input, 3 regime does not
// support the request, 4 numerical failure
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRegime = 3;
constexpr int kExitNumerical = 4;

std::string config_key_footer() {
  std::string footer = "Configuration keys (file or --set key=value):\n";
  for (const auto& spec : rabicli::key_registry()) {
    footer += "  ";
    footer += spec.name;
    std::size_t pad = std::string(spec.name).size();
    while (pad++ < 18) footer += ' ';
    footer += "default ";
    footer += spec.fallback;
    pad = std::string(spec.fallback).size();
    while (pad++ < 22) footer += ' ';
    footer += spec.doc;
    footer += '\n';
  }
  footer +=
      "\nPrecedence: defaults, then --config files, then --set pairs in order, then\n"
      "direct flags. RABI_CF_THREADS caps worker threads (default: machine\n"
      "parallelism); results are assembled in deterministic order regardless.";
  return footer;
}

struct CommandArgs {
  std::vector<std::string> config_files;
  std::vector<std::string> sets;
  std::string out;
  std::string format;
  bool trace = false;
};

void add_common_options(CLI::App* cmd, CommandArgs& args) {
  cmd->add_option("--config", args.config_files,
                  "configuration file (key = value lines, # comments); repeatable")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", args.sets, "override one key, as key=value; repeatable");
  cmd->add_option("--out", args.out, "output path (default: standard output)");
  cmd->add_option("--format", args.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rabi-cf: regular spectra of the two-mode and k-photon Rabi models via "
      "three-term recurrences and continued fractions"};
  app.require_subcommand(1);
  app.footer(config_key_footer());

  struct Dispatch {
    const char* name;
    const char* help;
  };
  const std::vector<Dispatch> commands = {
      {"regime", "classify the coupling regime and report the recurrence asymptotics"},
      {"blocks", "list the invariant blocks of the model"},
      {"spectrum", "scan and refine the regular spectrum of the selected sectors"},
      {"oracle", "diagonalize the truncated sector operators"},
      {"compare", "cross-check continued-fraction roots against the truncation oracle"},
      {"wavefunction", "sample the sector wavefunction at one eigenvalue"},
      {"diverge", "partial-sum growth report outside the normalizable regime"},
      {"convergence", "track truncated levels across increasing basis sizes"},
  };

  std::vector<CommandArgs> args(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
    add_common_options(sub, args[i]);
    if (std::string(commands[i].name) == "spectrum") {
      sub->add_flag("--trace", args[i].trace,
                    "also emit (energy, f_value, suspected_pole) grid samples");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the parse error
    return kExitUsage;
  }

  std::size_t chosen = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) {
      chosen = i;
      break;
    }
  }

  try {
    rabicli::Config cfg;
    for (const auto& file : args[chosen].config_files) {
      cfg.load_file(file);
    }
    for (const auto& pair : args[chosen].sets) {
      cfg.set_pair(pair);
    }
    if (!args[chosen].out.empty()) {
      cfg.set("out", args[chosen].out);
    }
    if (!args[chosen].format.empty()) {
      cfg.set("format", args[chosen].format);
    }
    if (args[chosen].trace) {
      cfg.set("trace", "true");
    }
    rabicli::run_command(commands[chosen].name, cfg);
    return 0;
  } catch (const rabicli::UsageError& err) {
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const rabicf::RegimeUnsupported& err) {
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitRegime;
  } catch (const rabicf::RegimeMismatch& err) {
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitRegime;
  } catch (const rabicf::MinimalSolutionUnavailable& err) {
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitRegime;
  } catch (const rabicf::NoCharacteristicEquation& err) {
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitRegime;
  } catch (const rabicf::Error& err) {
    // CouplingZero and BlockMismatch are input mistakes; the rest are
    // numerical failures (NoConvergence, PoleArtifact, TooFewTerms).
    if (dynamic_cast<const rabicf::CouplingZero*>(&err) ||
        dynamic_cast<const rabicf::BlockMismatch*>(&err)) {
      std::cerr << "rabi-cf: error: " << err.what() << '\n';
      return kExitUsage;
    }
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& err) {
    std::cerr << "rabi-cf: error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "rabi-cf: internal error: " << err.what() << '\n';
    return kExitInternal;
  }
}
