#include "dirl/qlearn.hpp"

#include <stdexcept>

namespace dirl {

void LearningParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0,1]");
  if (max_step <= 0) throw std::invalid_argument("max_step must be positive");
  if (!(external_reward > 0.0)) throw std::invalid_argument("external_reward must be positive");
}

void q_update(QTable& q, Cell s, Action a, double reward, Cell s_next,
              const LearningParams& params) {
  double target = reward + params.gamma * q.max_q(s_next);
  q.set(s, a, (1.0 - params.alpha) * q.get(s, a) + params.alpha * target);
}

Action select_action(const QTable& q, Cell s, const LearningParams& params,
                     Rng& rng) {
  if (params.epsilon > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < params.epsilon) {
      std::uniform_int_distribution<int> pick(0, kNumActions - 1);
      return static_cast<Action>(pick(rng));
    }
  }
  auto r = q.row(s);
  double best = r[0];
  int ties = 1;
  int maximizers[kNumActions] = {0};
  for (int a = 1; a < kNumActions; ++a) {
    if (r[a] > best) {
      best = r[a];
      maximizers[0] = a;
      ties = 1;
    } else if (r[a] == best) {
      maximizers[ties++] = a;
    }
  }
  if (ties == 1) return static_cast<Action>(maximizers[0]);
  std::uniform_int_distribution<int> pick(0, ties - 1);
  return static_cast<Action>(maximizers[pick(rng)]);
}

std::vector<Cell> greedy_trajectory(const QTable& q, const Maze& maze,
                                    Cell start, int max_step) {
  std::vector<Cell> path{start};
  Cell cur = start;
  for (int step = 0; step < max_step; ++step) {
    if (maze.goal_at(cur) >= 0) break;
    cur = maze.next_cell(cur, q.greedy_action(cur));
    path.push_back(cur);
  }
  return path;
}

}  // namespace dirl
