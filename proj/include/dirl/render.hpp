#pragma once

#include <string>
#include <vector>

#include "dirl/maze.hpp"
#include "dirl/qlearn.hpp"

namespace dirl {

// Q-table dump CSV: agent,row,col,action,q with one line per non-wall
// cell and action, q printed with 6 decimal places.
std::string qtables_to_csv(const std::vector<QTable>& tables, const Maze& maze);

// Inverse of qtables_to_csv; validates coordinates, actions and agent
// numbering against the maze. Throws std::runtime_error on mismatch.
std::vector<QTable> qtables_from_csv(const std::string& text, const Maze& maze);

// Per-agent text view: a grid of argmax arrows (fixed tie order) with
// walls, starts and goals, a max-Q grid, and the greedy trajectory from
// the agent's start.
std::string render_ascii(const std::vector<QTable>& tables, const Maze& maze);

// Deterministic SVG: one panel per agent with cell squares, max-Q labels,
// argmax arrows and the greedy trajectory as a polyline. Byte-stable for
// fixed inputs.
std::string render_svg(const std::vector<QTable>& tables, const Maze& maze);

}  // namespace dirl
