#pragma once

#include <span>
#include <vector>

#include "dirl/drl.hpp"
#include "dirl/maze.hpp"
#include "dirl/qlearn.hpp"

namespace dirl {

// One agent's visited state-action pairs for one episode, in order.
struct EpisodeTrace {
  std::vector<std::pair<Cell, Action>> steps;
  int terminal_step = 0;
};

// Shared terminal reward r / n_steps paid identically to every agent when
// all agents sit on pairwise-distinct goals at episode end; zero otherwise.
double ps_terminal_reward(double r, int n_steps, bool success);

// Backward geometric credit: walking the trace from its end, the pair at
// distance d from the end receives Q <- (1-alpha) Q + alpha reward gamma^d.
// Re-visited pairs take every applicable update in backward order.
void ps_credit_update(QTable& q, const EpisodeTrace& trace,
                      double terminal_reward, double alpha, double gamma);

// Profit-sharing training iteration: epsilon-greedy episode with no
// per-step learning; at the end the joint outcome (success flag and the
// last arrival step N) prices the shared reward credited along every
// agent's own trace. This baseline is the only learner allowed to read
// the joint outcome.
EpisodeRecord run_iteration_ps(std::vector<AgentBrain>& brains,
                               const Maze& maze, const LearningParams& lp,
                               std::span<Rng> rngs,
                               bool record_trajectories = false,
                               int iteration = 0);

}  // namespace dirl
