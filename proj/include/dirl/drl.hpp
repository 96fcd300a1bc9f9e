#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dirl/maze.hpp"
#include "dirl/qlearn.hpp"

namespace dirl {

// Per-goal learning bookkeeping of one agent. `t` is the agent's own
// minimum observed steps to the goal (-1 until first observed), `n`
// counts goal-value updates, and `r_sum`/`c` accumulate the external
// rewards collected on arrivals there.
struct GoalStats {
  std::vector<double> bid;
  std::vector<int> t;
  std::vector<int> n;
  std::vector<double> r_sum;
  std::vector<int> c;

  GoalStats() = default;
  explicit GoalStats(int n_goals)
      : bid(n_goals, 0.0), t(n_goals, -1), n(n_goals, 0), r_sum(n_goals, 0.0),
        c(n_goals, 0) {}

  int n_goals() const { return static_cast<int>(bid.size()); }
  bool has_t(int g) const { return t[g] >= 0; }
  void record_steps(int g, int steps) {
    if (t[g] < 0 || steps < t[g]) t[g] = steps;
  }
};

enum class DirectionMode { kDrl, kPmrl };

struct DirectionParams {
  double delta = 10.0;
  double threshold = 5.0;
  double goal_random_prob = 0.1;
  DirectionMode mode = DirectionMode::kDrl;

  void validate() const;
};

// Reward substituted for the external reward in the Q-update when the
// agent reaches goal g first: the discounted value of the best other
// recorded goal plus delta, or r + delta when no other goal has a
// recorded step count. Zero when not first. Requires t[g] recorded when
// was_first is set.
double internal_reward(const GoalStats& stats, int g, bool was_first, double r,
                       double gamma, double delta);

// Running-average goal value: bid <- ((n-1)/n) bid + (condition ? t[g] : 0)/n,
// with n the already-incremented update count for g.
void update_goal_value(GoalStats& stats, int g, bool condition_met);

// Mean acquired reward at g strictly above the threshold; false while no
// arrival has ever been recorded there.
bool drl_condition(const GoalStats& stats, int g, double threshold);

// Uniformly random goal with probability goal_random_prob, otherwise an
// argmax of bid with uniform tie-break.
int select_goal(const GoalStats& stats, double goal_random_prob, Rng& rng);

// One agent's learner state for one run.
struct AgentBrain {
  QTable qtable;
  GoalStats stats;
  int g_sel = 0;
  double received_reward_this_episode = 0.0;

  AgentBrain() = default;
  AgentBrain(const Maze& maze, double initial_q = 0.0)
      : qtable(maze.width(), maze.height(), initial_q),
        stats(maze.n_goals()) {}
};

// Everything one agent is allowed to see about a transition: its own
// state, action, reward and successor. arrived_goal is set on the step
// the agent absorbs.
struct Transition {
  Cell s;
  Action a;
  double external_reward = 0.0;
  Cell s_next;
  int arrived_goal = -1;
  int step = 0;
};

// Decision/learning interface of one agent inside an episode. Controllers
// receive only their own observations; any cross-agent influence flows
// through the environment.
class AgentController {
 public:
  virtual ~AgentController() = default;
  virtual Action select_action(Cell own_cell, Rng& rng) = 0;
  virtual void observe(const Transition& own) = 0;
};

// Replays a fixed action sequence and learns nothing. Used to pin down
// one agent's environment while testing another in isolation.
class ScriptedController : public AgentController {
 public:
  explicit ScriptedController(std::vector<Action> script)
      : script_(std::move(script)) {}
  Action select_action(Cell, Rng&) override {
    if (next_ < script_.size()) return script_[next_++];
    return Action::kUp;
  }
  void observe(const Transition&) override {}

 private:
  std::vector<Action> script_;
  size_t next_ = 0;
};

struct AgentEpisode {
  int agent = 0;
  int arrival_goal = -1;  // -1: never arrived
  int arrival_step = -1;
  double external_reward = 0.0;
  double internal_reward = 0.0;   // DRL/PMRL: ir paid on arrival; PS: terminal credit
  int goal_selected = -1;         // bid-update target chosen at episode end
  bool condition_met = false;
  int update_count = 0;           // n[goal_selected] after the update
  int min_steps = -1;             // t[goal_selected] at update time
  std::vector<double> bids;       // snapshot after the update
  std::vector<Cell> trajectory;   // filled when trajectories are recorded
};

struct EpisodeRecord {
  int iteration = 0;
  int steps = 0;
  std::vector<AgentEpisode> agents;
  std::vector<int> goal_claims;
};

// Runs one episode from the starts until every agent absorbs or max_step.
// Controllers are polled in agent order, each drawing only from its own
// RNG stream, and observe exactly their own transitions.
EpisodeRecord run_episode(const Maze& maze,
                          std::span<AgentController* const> controllers,
                          std::span<Rng> rngs, int max_step,
                          double reward_value, bool record_trajectories);

// One training iteration of directionality/profit-minimizing learning
// (Algorithm: episode with internal-reward Q-updates, then per agent
// goal re-selection, n increment and goal-value update).
EpisodeRecord run_iteration(std::vector<AgentBrain>& brains, const Maze& maze,
                            const LearningParams& lp, const DirectionParams& dp,
                            std::span<Rng> rngs, bool record_trajectories = false,
                            int iteration = 0);

// Plain independent Q-learning baseline: the Q-update consumes the raw
// external reward and no goal machinery runs.
EpisodeRecord run_iteration_plainq(std::vector<AgentBrain>& brains,
                                   const Maze& maze, const LearningParams& lp,
                                   std::span<Rng> rngs,
                                   bool record_trajectories = false,
                                   int iteration = 0);

// Deterministic joint greedy rollout (no exploration, fixed tie order)
// used for end-of-learning evaluation.
EpisodeRecord greedy_evaluation(const std::vector<AgentBrain>& brains,
                                const Maze& maze, int max_step,
                                double reward_value);

// Episode log line per agent:
// iteration,agent,g_sel,arrival_goal,arrival_step,external_reward,
// internal_reward,bid_g0..bid_gm. g_sel is the goal selected at the
// episode's end (the bid-update target); doubles are printed with
// round-trip precision so logged bids replay exactly.
std::string episode_log_header(int n_goals);
std::string episode_log_lines(const EpisodeRecord& record,
                              const Maze& maze);

}  // namespace dirl
