#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dirl/experiment.hpp"

namespace dirl {
namespace cli {

struct GenOptions {
  uint64_t seed = 1;
  int agents = 2;
  int width = 5;
  int height = 5;
  double density = 0.1;
  std::string out_path;  // empty: print the maze instead
};

struct RunOptions {
  std::string algo = "drl";
  std::string maze_path;
  std::string preset;  // "desk", "paper" or empty
  int seeds = 10;
  int iterations = 0;  // 0: derived from the preset (or desk default)
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.1;
  double delta = 10.0;
  double threshold = 5.0;
  double goal_random_prob = 0.1;
  double reward = 10.0;
  int max_step = 100;
  int eval_window = 1000;
  std::string out_dir = "out";
  bool episode_log = false;
};

struct RenderOptions {
  std::string qtable_path;
  std::string maze_path;
  std::string format = "ascii";  // or "svg"
  std::string out_path;          // empty: stdout
};

struct TableOptions {
  std::string results_dir;
  std::string out_path;  // empty: stdout
};

// Reads a JSON run config; keys mirror the RunOptions fields. Unknown
// keys are rejected. Flags given on the command line override the file.
RunOptions load_run_config(const std::string& path);

// Iteration count for a preset and agent count (desk: 10k/100k for up to
// two / more agents, paper: 50k/500k).
int preset_iterations(const std::string& preset, int n_agents);

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_render(const RenderOptions& opt, std::ostream& out, std::ostream& err);
int cmd_table(const TableOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace dirl
