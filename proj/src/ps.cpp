#include "dirl/ps.hpp"

#include <stdexcept>

namespace dirl {

double ps_terminal_reward(double r, int n_steps, bool success) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  return success ? r / n_steps : 0.0;
}

void ps_credit_update(QTable& q, const EpisodeTrace& trace,
                      double terminal_reward, double alpha, double gamma) {
  if (trace.steps.empty()) throw std::invalid_argument("empty episode trace");
  double credit = terminal_reward;
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    const auto& [s, a] = *it;
    q.set(s, a, (1.0 - alpha) * q.get(s, a) + alpha * credit);
    credit *= gamma;
  }
}

namespace {

// Epsilon-greedy actor that only records its trace during the episode;
// all learning happens at episode end from the shared terminal reward.
class PsController : public AgentController {
 public:
  PsController(AgentBrain& brain, const LearningParams& lp)
      : brain_(brain), lp_(lp) {}

  Action select_action(Cell own_cell, Rng& rng) override {
    return dirl::select_action(brain_.qtable, own_cell, lp_, rng);
  }

  void observe(const Transition& tr) override {
    trace_.steps.emplace_back(tr.s, tr.a);
    trace_.terminal_step = tr.step;
  }

  const EpisodeTrace& trace() const { return trace_; }

 private:
  AgentBrain& brain_;
  const LearningParams& lp_;
  EpisodeTrace trace_;
};

}  // namespace

EpisodeRecord run_iteration_ps(std::vector<AgentBrain>& brains,
                               const Maze& maze, const LearningParams& lp,
                               std::span<Rng> rngs, bool record_trajectories,
                               int iteration) {
  const int n = maze.n_agents();
  if (static_cast<int>(brains.size()) != n)
    throw std::invalid_argument("brain count != agent count");

  std::vector<PsController> ctrls;
  ctrls.reserve(n);
  for (auto& brain : brains) ctrls.emplace_back(brain, lp);
  std::vector<AgentController*> ptrs;
  ptrs.reserve(n);
  for (auto& c : ctrls) ptrs.push_back(&c);

  EpisodeRecord record = run_episode(maze, ptrs, rngs, lp.max_step,
                                     lp.external_reward, record_trajectories);
  record.iteration = iteration;

  // Joint outcome: success means all agents absorbed at pairwise-distinct
  // goals within the step cap; N is the step the last agent arrived.
  bool success = true;
  int last_arrival = 1;
  std::vector<bool> taken(maze.n_goals(), false);
  for (const auto& ep : record.agents) {
    if (ep.arrival_goal < 0 || taken[ep.arrival_goal]) {
      success = false;
      break;
    }
    taken[ep.arrival_goal] = true;
    last_arrival = std::max(last_arrival, ep.arrival_step);
  }

  const double terminal =
      ps_terminal_reward(lp.external_reward, success ? last_arrival : lp.max_step,
                         success);
  for (int i = 0; i < n; ++i) {
    if (!ctrls[i].trace().steps.empty())
      ps_credit_update(brains[i].qtable, ctrls[i].trace(), terminal, lp.alpha,
                       lp.gamma);
    record.agents[i].internal_reward = terminal;
  }
  return record;
}

}  // namespace dirl
