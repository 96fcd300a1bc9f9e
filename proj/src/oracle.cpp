#include "dirl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace dirl {
namespace oracle {

DistanceField bfs_shortest_paths(const Maze& maze, Cell source) {
  if (!maze.is_free(source)) throw MazeError("BFS source is not a free cell");
  DistanceField field{source, std::vector<int>(maze.n_cells(), kUnreachable)};
  std::queue<int> frontier;
  field.dist[maze.index(source)] = 0;
  frontier.push(maze.index(source));
  while (!frontier.empty()) {
    int idx = frontier.front();
    frontier.pop();
    for (Action a : kAllActions) {
      int n = maze.next_index(idx, a);
      if (field.dist[n] == kUnreachable) {
        field.dist[n] = field.dist[idx] + 1;
        frontier.push(n);
      }
    }
  }
  return field;
}

namespace {

void enumerate(const std::vector<std::vector<int>>& dist, int agent,
               std::vector<int>& picked, std::vector<bool>& used,
               int makespan_so_far, Assignment& best) {
  const int n_agents = static_cast<int>(dist.size());
  const int n_goals = static_cast<int>(dist[0].size());
  if (agent == n_agents) {
    if (best.goal_of_agent.empty() || makespan_so_far < best.makespan) {
      best.goal_of_agent = picked;
      best.makespan = makespan_so_far;
    }
    return;
  }
  for (int g = 0; g < n_goals; ++g) {
    if (used[g] || dist[agent][g] == kUnreachable) continue;
    used[g] = true;
    picked.push_back(g);
    enumerate(dist, agent + 1, picked, used,
              std::max(makespan_so_far, dist[agent][g]), best);
    picked.pop_back();
    used[g] = false;
  }
}

}  // namespace

Assignment optimal_assignment(const Maze& maze) {
  std::vector<std::vector<int>> dist(maze.n_agents(),
                                     std::vector<int>(maze.n_goals()));
  for (int i = 0; i < maze.n_agents(); ++i) {
    DistanceField f = bfs_shortest_paths(maze, maze.starts()[i]);
    bool any = false;
    for (int g = 0; g < maze.n_goals(); ++g) {
      dist[i][g] = f.at(maze.goals()[g], maze);
      any |= dist[i][g] != kUnreachable;
    }
    if (!any)
      throw MazeError("agent " + std::to_string(i) + " reaches no goal");
  }

  Assignment best;
  std::vector<int> picked;
  std::vector<bool> used(maze.n_goals(), false);
  enumerate(dist, 0, picked, used, 0, best);
  if (best.goal_of_agent.empty())
    throw MazeError("no feasible conflict-free assignment");
  return best;
}

QTable value_iteration(const Maze& maze, int goal, double gamma, double reward,
                       double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  if (goal < 0 || goal >= maze.n_goals()) throw std::invalid_argument("bad goal index");
  const Cell goal_cell = maze.goals()[goal];
  QTable q(maze.width(), maze.height(), 0.0);

  double residual = tol;
  while (residual >= tol) {
    residual = 0.0;
    for (int idx = 0; idx < maze.n_cells(); ++idx) {
      Cell s = maze.cell(idx);
      if (!maze.is_free(s) || s == goal_cell) continue;
      for (Action a : kAllActions) {
        Cell s2 = maze.next_cell(s, a);
        double target =
            (s2 == goal_cell) ? reward : gamma * q.max_q(s2);
        residual = std::max(residual, std::abs(target - q.get(s, a)));
        q.set(s, a, target);
      }
    }
  }
  return q;
}

}  // namespace oracle
}  // namespace dirl
