#pragma once

#include <random>
#include <span>
#include <vector>

#include "dirl/maze.hpp"

namespace dirl {

using Rng = std::mt19937_64;

struct LearningParams {
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.1;
  int max_step = 100;
  double external_reward = 10.0;

  void validate() const;
};

// Dense per-agent state-action value table over the cells of one maze.
// Unwritten entries read back as initial_q.
class QTable {
 public:
  QTable() = default;
  QTable(int width, int height, double initial_q = 0.0)
      : width_(width),
        height_(height),
        initial_q_(initial_q),
        values_(static_cast<size_t>(width) * height * kNumActions, initial_q) {}

  int width() const { return width_; }
  int height() const { return height_; }
  double initial_q() const { return initial_q_; }

  double get(Cell s, Action a) const { return values_[slot(s, a)]; }
  void set(Cell s, Action a, double q) { values_[slot(s, a)] = q; }

  std::span<const double> row(Cell s) const {
    return {values_.data() + slot(s, Action::kUp), kNumActions};
  }

  double max_q(Cell s) const {
    auto r = row(s);
    double m = r[0];
    for (int a = 1; a < kNumActions; ++a) m = std::max(m, r[a]);
    return m;
  }

  // First maximizer in the fixed action order Up, Down, Left, Right.
  Action greedy_action(Cell s) const {
    auto r = row(s);
    int best = 0;
    for (int a = 1; a < kNumActions; ++a)
      if (r[a] > r[best]) best = a;
    return static_cast<Action>(best);
  }

  bool operator==(const QTable&) const = default;

 private:
  size_t slot(Cell s, Action a) const {
    return (static_cast<size_t>(s.y) * width_ + s.x) * kNumActions +
           static_cast<int>(a);
  }

  int width_ = 0;
  int height_ = 0;
  double initial_q_ = 0.0;
  std::vector<double> values_;
};

// Q(s,a) <- (1-alpha) Q(s,a) + alpha [reward + gamma max_a' Q(s_next, a')].
// Touches exactly one entry.
void q_update(QTable& q, Cell s, Action a, double reward, Cell s_next,
              const LearningParams& params);

// Epsilon-greedy: uniformly random with probability epsilon, otherwise a
// maximizer of Q(s, .) with uniform tie-break.
Action select_action(const QTable& q, Cell s, const LearningParams& params,
                     Rng& rng);

// Deterministic argmax rollout (ties resolved in fixed action order),
// stopping on any goal cell or after max_step moves. Returns the visited
// cells including the start.
std::vector<Cell> greedy_trajectory(const QTable& q, const Maze& maze,
                                    Cell start, int max_step);

}  // namespace dirl
