#include "dirl/drl.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dirl {

void DirectionParams::validate() const {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(goal_random_prob >= 0.0 && goal_random_prob <= 1.0))
    throw std::invalid_argument("goal_random_prob must lie in [0,1]");
}

double internal_reward(const GoalStats& stats, int g, bool was_first, double r,
                       double gamma, double delta) {
  if (!was_first) return 0.0;
  if (!stats.has_t(g))
    throw std::logic_error("internal_reward: no recorded steps for goal " +
                           std::to_string(g));
  double best = -1.0;
  for (int other = 0; other < stats.n_goals(); ++other) {
    if (other == g || !stats.has_t(other)) continue;
    double v = r * std::pow(gamma, stats.t[other] - stats.t[g]);
    if (v > best) best = v;
  }
  if (best < 0.0) return r + delta;  // no other goal recorded yet
  return best + delta;
}

void update_goal_value(GoalStats& stats, int g, bool condition_met) {
  const int n = stats.n[g];
  assert(n >= 1 && "n must be incremented before the goal-value update");
  double contribution = 0.0;
  if (condition_met) {
    if (!stats.has_t(g))
      throw std::logic_error("goal-value update with condition met but no "
                             "recorded steps for goal " + std::to_string(g));
    contribution = static_cast<double>(stats.t[g]);
  }
  stats.bid[g] = (static_cast<double>(n - 1) / n) * stats.bid[g] +
                 contribution / n;
}

bool drl_condition(const GoalStats& stats, int g, double threshold) {
  if (stats.c[g] == 0) return false;
  return stats.r_sum[g] / stats.c[g] > threshold;
}

int select_goal(const GoalStats& stats, double goal_random_prob, Rng& rng) {
  const int m = stats.n_goals();
  if (m == 0) throw std::logic_error("select_goal with no goals");
  if (goal_random_prob > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < goal_random_prob) {
      std::uniform_int_distribution<int> pick(0, m - 1);
      return pick(rng);
    }
  }
  double best = stats.bid[0];
  int ties = 1;
  std::vector<int> maximizers{0};
  maximizers.reserve(m);
  for (int g = 1; g < m; ++g) {
    if (stats.bid[g] > best) {
      best = stats.bid[g];
      maximizers.assign(1, g);
      ties = 1;
    } else if (stats.bid[g] == best) {
      maximizers.push_back(g);
      ++ties;
    }
  }
  if (ties == 1) return maximizers[0];
  std::uniform_int_distribution<int> pick(0, ties - 1);
  return maximizers[pick(rng)];
}

namespace {

// Learning controller for directionality/profit-minimizing modes. All
// inputs are the agent's own state; firstness is inferred from reward
// receipt alone.
class DirectionController : public AgentController {
 public:
  DirectionController(AgentBrain& brain, const LearningParams& lp,
                      const DirectionParams& dp)
      : brain_(brain), lp_(lp), dp_(dp) {}

  Action select_action(Cell own_cell, Rng& rng) override {
    return dirl::select_action(brain_.qtable, own_cell, lp_, rng);
  }

  void observe(const Transition& tr) override {
    double ir = 0.0;
    if (tr.arrived_goal >= 0) {
      const int g = tr.arrived_goal;
      brain_.stats.r_sum[g] += tr.external_reward;
      brain_.stats.c[g] += 1;
      brain_.stats.record_steps(g, tr.step);
      brain_.received_reward_this_episode += tr.external_reward;
      bool was_first = g == brain_.g_sel && tr.external_reward > 0.0;
      if (was_first)
        ir = internal_reward(brain_.stats, g, true, lp_.external_reward,
                             lp_.gamma, dp_.delta);
      last_internal_reward_ = ir;
    }
    q_update(brain_.qtable, tr.s, tr.a, ir, tr.s_next, lp_);
  }

  double last_internal_reward() const { return last_internal_reward_; }

 private:
  AgentBrain& brain_;
  const LearningParams& lp_;
  const DirectionParams& dp_;
  double last_internal_reward_ = 0.0;
};

class PlainQController : public AgentController {
 public:
  PlainQController(AgentBrain& brain, const LearningParams& lp)
      : brain_(brain), lp_(lp) {}

  Action select_action(Cell own_cell, Rng& rng) override {
    return dirl::select_action(brain_.qtable, own_cell, lp_, rng);
  }

  void observe(const Transition& tr) override {
    q_update(brain_.qtable, tr.s, tr.a, tr.external_reward, tr.s_next, lp_);
  }

 private:
  AgentBrain& brain_;
  const LearningParams& lp_;
};

// Exploration-free argmax policy with the fixed tie order.
class GreedyController : public AgentController {
 public:
  explicit GreedyController(const QTable& q) : q_(q) {}
  Action select_action(Cell own_cell, Rng&) override {
    return q_.greedy_action(own_cell);
  }
  void observe(const Transition&) override {}

 private:
  const QTable& q_;
};

}  // namespace

EpisodeRecord run_episode(const Maze& maze,
                          std::span<AgentController* const> controllers,
                          std::span<Rng> rngs, int max_step,
                          double reward_value, bool record_trajectories) {
  const int n = maze.n_agents();
  if (static_cast<int>(controllers.size()) != n)
    throw std::invalid_argument("controller count != agent count");
  if (static_cast<int>(rngs.size()) != n)
    throw std::invalid_argument("rng count != agent count");

  WorldState world = WorldState::initial(maze);
  EpisodeRecord record;
  record.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    record.agents[i].agent = i;
    if (record_trajectories) record.agents[i].trajectory.push_back(world.positions[i].cell);
  }

  std::vector<Action> joint(n, Action::kUp);
  std::vector<double> rewards(n, 0.0);
  std::vector<Cell> before(n);

  while (!is_episode_done(world, max_step)) {
    for (int i = 0; i < n; ++i) {
      before[i] = world.positions[i].cell;
      if (!world.positions[i].absorbed())
        joint[i] = controllers[i]->select_action(before[i], rngs[i]);
    }
    step(maze, world, joint, reward_value, rewards);
    for (int i = 0; i < n; ++i) {
      const AgentPosition& pos = world.positions[i];
      if (pos.absorbed() && pos.arrival_step < world.step) continue;  // was absorbed before
      Transition tr{before[i], joint[i], rewards[i], pos.cell,
                    pos.arrival_step == world.step ? pos.arrived_goal : -1,
                    world.step};
      controllers[i]->observe(tr);
      if (record_trajectories) record.agents[i].trajectory.push_back(pos.cell);
      if (tr.arrived_goal >= 0) {
        record.agents[i].arrival_goal = tr.arrived_goal;
        record.agents[i].arrival_step = pos.arrival_step;
        record.agents[i].external_reward = rewards[i];
      }
    }
  }
  record.steps = world.step;
  record.goal_claims = world.goal_claims;
  return record;
}

EpisodeRecord run_iteration(std::vector<AgentBrain>& brains, const Maze& maze,
                            const LearningParams& lp, const DirectionParams& dp,
                            std::span<Rng> rngs, bool record_trajectories,
                            int iteration) {
  const int n = maze.n_agents();
  if (static_cast<int>(brains.size()) != n)
    throw std::invalid_argument("brain count != agent count");

  std::vector<DirectionController> ctrls;
  ctrls.reserve(n);
  for (auto& brain : brains) {
    brain.received_reward_this_episode = 0.0;
    ctrls.emplace_back(brain, lp, dp);
  }
  std::vector<AgentController*> ptrs;
  ptrs.reserve(n);
  for (auto& c : ctrls) ptrs.push_back(&c);

  EpisodeRecord record = run_episode(maze, ptrs, rngs, lp.max_step,
                                     lp.external_reward, record_trajectories);
  record.iteration = iteration;

  for (int i = 0; i < n; ++i) {
    AgentBrain& brain = brains[i];
    AgentEpisode& ep = record.agents[i];
    ep.internal_reward = ctrls[i].last_internal_reward();

    const int g_sel = select_goal(brain.stats, dp.goal_random_prob, rngs[i]);
    brain.stats.n[g_sel] += 1;
    const bool reached_first =
        ep.arrival_goal == g_sel && ep.external_reward > 0.0;
    const bool condition =
        dp.mode == DirectionMode::kDrl
            ? reached_first && drl_condition(brain.stats, g_sel, dp.threshold)
            : reached_first;
    update_goal_value(brain.stats, g_sel, condition);
    brain.g_sel = g_sel;

    ep.goal_selected = g_sel;
    ep.condition_met = condition;
    ep.update_count = brain.stats.n[g_sel];
    ep.min_steps = brain.stats.t[g_sel];
    ep.bids = brain.stats.bid;
  }
  return record;
}

EpisodeRecord run_iteration_plainq(std::vector<AgentBrain>& brains,
                                   const Maze& maze, const LearningParams& lp,
                                   std::span<Rng> rngs,
                                   bool record_trajectories, int iteration) {
  const int n = maze.n_agents();
  if (static_cast<int>(brains.size()) != n)
    throw std::invalid_argument("brain count != agent count");

  std::vector<PlainQController> ctrls;
  ctrls.reserve(n);
  for (auto& brain : brains) ctrls.emplace_back(brain, lp);
  std::vector<AgentController*> ptrs;
  ptrs.reserve(n);
  for (auto& c : ctrls) ptrs.push_back(&c);

  EpisodeRecord record = run_episode(maze, ptrs, rngs, lp.max_step,
                                     lp.external_reward, record_trajectories);
  record.iteration = iteration;
  return record;
}

EpisodeRecord greedy_evaluation(const std::vector<AgentBrain>& brains,
                                const Maze& maze, int max_step,
                                double reward_value) {
  const int n = maze.n_agents();
  std::vector<GreedyController> ctrls;
  ctrls.reserve(n);
  for (const auto& brain : brains) ctrls.emplace_back(brain.qtable);
  std::vector<AgentController*> ptrs;
  ptrs.reserve(n);
  for (auto& c : ctrls) ptrs.push_back(&c);
  std::vector<Rng> rngs(n);  // never drawn from
  return run_episode(maze, ptrs, rngs, max_step, reward_value, true);
}

std::string episode_log_header(int n_goals) {
  std::string h =
      "iteration,agent,g_sel,arrival_goal,arrival_step,external_reward,"
      "internal_reward";
  for (int g = 0; g < n_goals; ++g) h += ",bid_g" + std::to_string(g);
  h += "\n";
  return h;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string episode_log_lines(const EpisodeRecord& record, const Maze& maze) {
  std::string out;
  for (const auto& ep : record.agents) {
    out += std::to_string(record.iteration);
    out += ',' + std::to_string(ep.agent);
    out += ',';
    out += ep.goal_selected >= 0 ? maze.goal_label(ep.goal_selected) : "-";
    out += ',';
    out += ep.arrival_goal >= 0 ? maze.goal_label(ep.arrival_goal) : "-";
    out += ',';
    out += ep.arrival_step >= 0 ? std::to_string(ep.arrival_step) : "-";
    out += ',' + fmt_double(ep.external_reward);
    out += ',' + fmt_double(ep.internal_reward);
    for (double b : ep.bids) out += ',' + fmt_double(b);
    if (ep.bids.empty())
      for (int g = 0; g < maze.n_goals(); ++g) out += ",0";
    out += '\n';
  }
  return out;
}

}  // namespace dirl
