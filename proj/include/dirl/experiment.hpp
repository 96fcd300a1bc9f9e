#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dirl/drl.hpp"
#include "dirl/maze.hpp"
#include "dirl/ps.hpp"

namespace dirl {

enum class AlgorithmKind { kDrl, kPmrl, kPs, kPlainQ };

const char* algorithm_name(AlgorithmKind a);
AlgorithmKind algorithm_from_name(const std::string& name);

struct ExperimentConfig {
  AlgorithmKind algorithm = AlgorithmKind::kDrl;
  std::string maze_name = "maze";
  Maze maze;
  int iterations = 10000;
  std::vector<uint64_t> seeds;
  LearningParams learning;
  DirectionParams direction;
  int eval_window = 1000;
  // When nonempty, one episode-log CSV per seed is written here.
  std::string episode_log_dir;

  void validate() const;
};

struct RunMetrics {
  std::string maze_name;
  AlgorithmKind algorithm = AlgorithmKind::kDrl;
  uint64_t seed = 0;
  int final_joint_steps = 0;  // greedy evaluation after training
  int window_min_steps = 0;   // min joint steps over the trailing eval window
  bool conflict = false;      // two or more agents on the same goal at evaluation
  std::vector<int> final_goals;  // per agent, -1 when never arrived
  int64_t duration_ms = 0;
  std::vector<int> per_iteration_joint_steps;  // in-memory only
  std::vector<QTable> final_qtables;           // in-memory only
};

// Steps until all agents have reached goals: the max arrival step, capped
// at max_step when any agent missed out or two agents share a goal.
int joint_steps(const EpisodeRecord& record, int max_step);

// Trains one run per seed (fan-out across a worker pool capped by the
// DIRL_THREADS environment variable) and evaluates each with a greedy
// rollout. Output order follows the seed list; every run is a pure
// function of (config, seed).
std::vector<RunMetrics> run_experiment(const ExperimentConfig& config);

// Results CSV:
// maze,algorithm,seed,final_joint_steps,window_min_steps,conflict,goal_assignment,duration_ms
std::string metrics_csv_header();
std::string metrics_csv(const std::vector<RunMetrics>& rows, bool with_header = true);
std::vector<RunMetrics> parse_metrics_csv(const std::string& text);

// Comparison grid in the shape of a per-algorithm row of per-maze minimum
// final steps, with companion mean and success-rate rows, grouped in
// sections per agent count.
std::string summarize(const std::vector<RunMetrics>& rows);

// Derives a per-agent RNG stream for one run.
Rng agent_rng(uint64_t run_seed, int agent_index);

}  // namespace dirl
