// episodary: mine closed episodes, generate planted data, check coverage and
// subepisode relations.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "episodary/episode.hpp"
#include "episodary/error.hpp"
#include "episodary/instance.hpp"
#include "episodary/miner.hpp"
#include "episodary/oracle.hpp"
#include "episodary/sequence.hpp"
#include "episodary/subepisode.hpp"

namespace {

using namespace episodary;

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitResource = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("episodary");
  logger->set_pattern("[%l] %v");
  const char* level = std::getenv("EPISODARY_LOG");
  std::string name = level ? level : "off";
  if (name == "debug")
    logger->set_level(spdlog::level::debug);
  else if (name == "info")
    logger->set_level(spdlog::level::info);
  else
    logger->set_level(spdlog::level::off);
  spdlog::set_default_logger(logger);
}

Sequence read_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_sequence(in);
}

// First line that is neither blank nor a `#` comment.
Episode read_episode(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      return parse_episode(line);
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(number) + ": " + e.what(), number,
                       e.column());
    }
  }
  throw ParseError(path + ": no episode found", number);
}

// Writes to `path`, or stdout when it is empty.
template <typename Fn>
void with_output(const std::string& path, Fn write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  write(out);
}

struct MineArgs {
  std::string input;
  Timestamp window = 0;
  std::int64_t min_support = 0;
  std::string output;
  std::string format = "text";
  std::string stats;
  std::size_t instance_abort = MinerConfig{}.instance_abort;
};

void write_stats(const MineArgs& args, const MinerStats& stats, double wall_ms) {
  bool csv = args.stats.size() >= 4 && args.stats.compare(args.stats.size() - 4, 4, ".csv") == 0;
  with_output(args.stats, [&](std::ostream& out) {
    if (csv) {
      out << "window,sigma,closed,i_closed,frequent_estimate,scans\n"
          << args.window << ',' << args.min_support << ',' << stats.closed << ','
          << stats.i_closed << ',' << stats.frequent_estimate << ',' << stats.scans << '\n';
      return;
    }
    out << "input=" << args.input << '\n'
        << "window=" << args.window << '\n'
        << "sigma=" << args.min_support << '\n'
        << "output=" << (args.output.empty() ? "-" : args.output) << '\n'
        << "closed=" << stats.closed << '\n'
        << "i_closed=" << stats.i_closed << '\n'
        << "frequent_estimate=" << stats.frequent_estimate << '\n'
        << "scans=" << stats.scans << '\n'
        << "wall_ms=" << static_cast<long long>(wall_ms) << '\n';
  });
}

int cmd_mine(const MineArgs& args) {
  Sequence s = read_sequence(args.input);
  spdlog::info("read {} events, {} labels", s.size(), s.alphabet().size());

  MinerConfig cfg;
  cfg.window = args.window;
  cfg.min_support = args.min_support;
  cfg.instance_abort = args.instance_abort;

  MinerObserver observer;
  if (spdlog::should_log(spdlog::level::debug)) {
    observer = [](const MinerVisit& v) {
      spdlog::debug("support {} {} {}", v.support, v.accepted ? "accept" : "reject",
                    serialize_episode(v.accepted ? *v.accepted : v.candidate));
    };
  }

  auto start = std::chrono::steady_clock::now();
  MineResult result = Miner(cfg, observer).run(s);
  double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  spdlog::info("closed={} i_closed={} scans={} in {:.1f} ms", result.stats.closed,
               result.stats.i_closed, result.stats.scans, wall_ms);

  with_output(args.output, [&](std::ostream& out) {
    for (const Episode& g : result.episodes)
      out << (args.format == "records" ? episode_record(g) : serialize_episode(g)) << '\n';
  });
  if (!args.stats.empty()) write_stats(args, result.stats, wall_ms);
  return 0;
}

int cmd_gen(const PlantedConfig& cfg, const std::string& output) {
  Sequence s = gen_planted(cfg);
  with_output(output, [&](std::ostream& out) { write_sequence(out, s); });
  return 0;
}

int report(bool value) {
  std::cout << (value ? "true" : "false") << '\n';
  return value ? 0 : kExitFalse;
}

int run(int argc, char** argv) {
  CLI::App app{"Closed episode miner"};
  app.require_subcommand(1);

  MineArgs mine_args;
  auto* mine = app.add_subcommand("mine", "Mine closed frequent episodes");
  mine->add_option("--input", mine_args.input, "Sequence file")
      ->required()
      ->check(CLI::ExistingFile);
  mine->add_option("--window", mine_args.window, "Window size")
      ->required()
      ->check(CLI::PositiveNumber);
  mine->add_option("--min-support", mine_args.min_support, "Support threshold")
      ->required()
      ->check(CLI::PositiveNumber);
  mine->add_option("--output", mine_args.output, "Output file (default stdout)");
  mine->add_option("--format", mine_args.format, "text or records")
      ->check(CLI::IsMember({"text", "records"}));
  mine->add_option("--stats", mine_args.stats, "Stats file (.csv for a CSV row)");
  mine->add_option("--instance-abort", mine_args.instance_abort, "Instance set size limit")
      ->check(CLI::PositiveNumber);

  PlantedConfig planted;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "Generate a sequence with a planted pattern");
  gen->add_option("--nodes", planted.nodes, "Pattern nodes")->check(CLI::Range(1, 9999));
  gen->add_option("--reps", planted.reps, "Pattern repetitions")->check(CLI::NonNegativeNumber);
  gen->add_option("--gap", planted.gap, "Time between repetitions")->check(CLI::PositiveNumber);
  gen->add_option("--noise", planted.noise_count, "Noise events")->check(CLI::NonNegativeNumber);
  gen->add_option("--noise-alphabet", planted.noise_alphabet, "Distinct noise labels")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", planted.seed, "Random seed");
  gen->add_option("--output", gen_output, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Decide coverage or subepisode relations");
  check->require_subcommand(1);
  std::string seq_path, episode_path, lhs_path, rhs_path;
  bool use_oracle = false;
  auto* cover = check->add_subcommand("cover", "Does the sequence cover the episode?");
  cover->add_option("--sequence", seq_path)->required()->check(CLI::ExistingFile);
  cover->add_option("--episode", episode_path)->required()->check(CLI::ExistingFile);
  cover->add_flag("--oracle", use_oracle, "Use the brute-force backtracking search");
  auto* sub = check->add_subcommand("sub", "Is lhs a subepisode of rhs?");
  sub->add_option("--lhs", lhs_path)->required()->check(CLI::ExistingFile);
  sub->add_option("--rhs", rhs_path)->required()->check(CLI::ExistingFile);
  sub->add_flag("--oracle", use_oracle, "Use the brute-force witness enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*mine) return cmd_mine(mine_args);
  if (*gen) return cmd_gen(planted, gen_output);
  if (*cover) {
    Sequence s = read_sequence(seq_path);
    Episode g = read_episode(episode_path);
    return report(use_oracle ? oracle::covers(s, g) : covers_by_instances(s, g));
  }
  Episode lhs = transitive_closure(read_episode(lhs_path));
  Episode rhs = transitive_closure(read_episode(rhs_path));
  return report(use_oracle ? oracle::brute_subepisode(lhs, rhs) : is_subepisode(lhs, rhs));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const CycleError& e) {
    std::cerr << "invalid episode: " << e.what() << '\n';
    return kExitParse;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
