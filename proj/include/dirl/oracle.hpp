#pragma once

#include <vector>

#include "dirl/maze.hpp"
#include "dirl/qlearn.hpp"

namespace dirl {
namespace oracle {

inline constexpr int kUnreachable = -1;

struct DistanceField {
  Cell source;
  std::vector<int> dist;  // indexed by cell, kUnreachable where cut off

  int at(Cell c, const Maze& maze) const { return dist[maze.index(c)]; }
};

// Exact unweighted shortest paths from source through free cells.
DistanceField bfs_shortest_paths(const Maze& maze, Cell source);

struct Assignment {
  std::vector<int> goal_of_agent;  // injective agent -> goal index
  int makespan = 0;
};

// Brute-force enumeration of all injective agent->goal assignments,
// minimizing the maximum BFS distance; ties resolved by lexicographic
// assignment order. Throws MazeError if some agent reaches no goal.
Assignment optimal_assignment(const Maze& maze);

// Optimal Q for the single-agent MDP with one absorbing goal that pays
// `reward` once on entry (zero value afterwards). Sup-norm residual < tol.
QTable value_iteration(const Maze& maze, int goal, double gamma, double reward,
                       double tol);

}  // namespace oracle
}  // namespace dirl
