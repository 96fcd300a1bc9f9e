#include "dirl/maze.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace dirl {

const char* action_name(Action a) {
  switch (a) {
    case Action::kUp: return "up";
    case Action::kDown: return "down";
    case Action::kLeft: return "left";
    case Action::kRight: return "right";
  }
  throw std::invalid_argument("bad action");
}

char action_arrow(Action a) {
  switch (a) {
    case Action::kUp: return '^';
    case Action::kDown: return 'v';
    case Action::kLeft: return '<';
    case Action::kRight: return '>';
  }
  throw std::invalid_argument("bad action");
}

Action action_from_name(const std::string& name) {
  for (Action a : kAllActions) {
    if (name == action_name(a)) return a;
  }
  throw std::invalid_argument("unknown action name: " + name);
}

namespace {

constexpr int kDx[kNumActions] = {0, 0, -1, 1};
constexpr int kDy[kNumActions] = {-1, 1, 0, 0};

}  // namespace

Maze::Maze(int width, int height, std::vector<uint8_t> walls,
           std::vector<Cell> starts, std::vector<Cell> goals)
    : width_(width),
      height_(height),
      walls_(std::move(walls)),
      starts_(std::move(starts)),
      goals_(std::move(goals)) {
  if (width_ <= 0 || height_ <= 0) throw MazeError("maze dimensions must be positive");
  if (walls_.size() != static_cast<size_t>(n_cells())) throw MazeError("wall grid size mismatch");
  build_tables();
  validate();
}

void Maze::build_tables() {
  next_.assign(static_cast<size_t>(n_cells()) * kNumActions, 0);
  goal_at_.assign(n_cells(), -1);
  for (size_t g = 0; g < goals_.size(); ++g) {
    if (!in_bounds(goals_[g])) throw MazeError("goal out of bounds");
    goal_at_[index(goals_[g])] = static_cast<int16_t>(g);
  }
  for (int idx = 0; idx < n_cells(); ++idx) {
    Cell c = cell(idx);
    for (int a = 0; a < kNumActions; ++a) {
      Cell n{c.x + kDx[a], c.y + kDy[a]};
      next_[idx * kNumActions + a] =
          static_cast<int32_t>(is_free(n) ? index(n) : idx);
    }
  }
}

void Maze::validate() const {
  if (starts_.empty()) throw MazeError("maze has no agent starts");
  if (goals_.empty()) throw MazeError("maze has no goals");
  if (goals_.size() < starts_.size())
    throw MazeError("fewer goals than agents (" + std::to_string(goals_.size()) +
                    " < " + std::to_string(starts_.size()) + ")");
  if (goals_.size() > 10) throw MazeError("more than 10 goals");

  std::vector<uint8_t> seen(n_cells(), 0);
  auto claim = [&](Cell c, const char* kind) {
    if (!in_bounds(c)) throw MazeError(std::string(kind) + " cell out of bounds");
    if (is_wall(c)) throw MazeError(std::string(kind) + " cell overlaps a wall");
    if (seen[index(c)]) throw MazeError(std::string(kind) + " cell overlaps another marker");
    seen[index(c)] = 1;
  };
  for (Cell c : starts_) claim(c, "start");
  for (Cell c : goals_) claim(c, "goal");

  // Flood from each start; every goal must be reachable through free cells.
  for (size_t i = 0; i < starts_.size(); ++i) {
    std::vector<uint8_t> visited(n_cells(), 0);
    std::queue<int> frontier;
    frontier.push(index(starts_[i]));
    visited[index(starts_[i])] = 1;
    while (!frontier.empty()) {
      int idx = frontier.front();
      frontier.pop();
      for (int a = 0; a < kNumActions; ++a) {
        int n = next_[idx * kNumActions + a];
        if (!visited[n]) {
          visited[n] = 1;
          frontier.push(n);
        }
      }
    }
    for (size_t g = 0; g < goals_.size(); ++g) {
      if (!visited[index(goals_[g])])
        throw MazeError("goal G" + std::to_string(g) + " unreachable from start " +
                        std::to_string(i));
    }
  }
}

Maze Maze::parse(const std::string& text) {
  std::istringstream in(text);
  int w = 0, h = 0;
  std::string header;
  if (!std::getline(in, header)) throw MazeError("empty maze file");
  {
    std::istringstream hs(header);
    if (!(hs >> w >> h) || w <= 0 || h <= 0)
      throw MazeError("bad maze header, expected 'W H': " + header);
    std::string rest;
    if (hs >> rest) throw MazeError("trailing content in maze header");
  }

  std::vector<uint8_t> walls(static_cast<size_t>(w) * h, 0);
  std::vector<std::pair<char, Cell>> start_marks, goal_marks;
  for (int y = 0; y < h; ++y) {
    std::string row;
    if (!std::getline(in, row)) throw MazeError("maze grid has fewer rows than header");
    if (static_cast<int>(row.size()) != w)
      throw MazeError("row " + std::to_string(y) + " has width " +
                      std::to_string(row.size()) + ", expected " + std::to_string(w));
    for (int x = 0; x < w; ++x) {
      char ch = row[x];
      Cell c{x, y};
      if (ch == '#') {
        walls[static_cast<size_t>(y) * w + x] = 1;
      } else if (ch == '.') {
        // free
      } else if (ch >= 'A' && ch <= 'Z') {
        start_marks.emplace_back(ch, c);
      } else if (ch >= '0' && ch <= '9') {
        goal_marks.emplace_back(ch, c);
      } else {
        throw MazeError(std::string("unknown maze character '") + ch + "'");
      }
    }
  }
  std::string extra;
  while (std::getline(in, extra)) {
    if (!extra.empty()) throw MazeError("maze grid has more rows than header");
  }

  auto ordered = [](auto& marks, char base, const char* kind) {
    std::sort(marks.begin(), marks.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Cell> cells;
    for (size_t i = 0; i < marks.size(); ++i) {
      char expect = static_cast<char>(base + i);
      if (marks[i].first != expect)
        throw MazeError(std::string(kind) + " markers must be a contiguous run from '" +
                        base + "' without duplicates");
      cells.push_back(marks[i].second);
    }
    return cells;
  };
  std::vector<Cell> starts = ordered(start_marks, 'A', "start");
  std::vector<Cell> goals = ordered(goal_marks, '0', "goal");
  return Maze(w, h, std::move(walls), std::move(starts), std::move(goals));
}

std::string Maze::serialize() const {
  std::string out = std::to_string(width_) + " " + std::to_string(height_) + "\n";
  std::vector<char> grid(n_cells(), '.');
  for (int i = 0; i < n_cells(); ++i)
    if (walls_[i]) grid[i] = '#';
  for (size_t i = 0; i < starts_.size(); ++i)
    grid[index(starts_[i])] = static_cast<char>('A' + i);
  for (size_t g = 0; g < goals_.size(); ++g)
    grid[index(goals_[g])] = static_cast<char>('0' + g);
  for (int y = 0; y < height_; ++y) {
    out.append(grid.begin() + static_cast<size_t>(y) * width_,
               grid.begin() + static_cast<size_t>(y + 1) * width_);
    out.push_back('\n');
  }
  return out;
}

Maze generate_maze(uint64_t seed, int n_agents, int width, int height,
                   double wall_density) {
  if (n_agents <= 0) throw MazeError("n_agents must be positive");
  if (n_agents > 10) throw MazeError("at most 10 agents (goal labels are single digits)");
  if (width <= 0 || height <= 0) throw MazeError("maze dimensions must be positive");
  if (wall_density < 0.0 || wall_density >= 1.0)
    throw MazeError("wall_density must lie in [0, 1)");

  const int cells = width * height;
  const int n_walls = static_cast<int>(wall_density * cells);
  if (cells - n_walls < 2 * n_agents)
    throw MazeError("maze too small for " + std::to_string(n_agents) +
                    " starts and goals (seed " + std::to_string(seed) + ", " +
                    std::to_string(width) + "x" + std::to_string(height) + ")");

  std::mt19937_64 rng(seed);
  constexpr int kMaxAttempts = 200;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<int> order(cells);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<uint8_t> walls(cells, 0);
    for (int i = 0; i < n_walls; ++i) walls[order[i]] = 1;

    std::vector<Cell> starts, goals;
    for (int i = n_walls; i < n_walls + n_agents; ++i)
      starts.push_back({order[i] % width, order[i] / width});
    for (int i = n_walls + n_agents; i < n_walls + 2 * n_agents; ++i)
      goals.push_back({order[i] % width, order[i] / width});

    try {
      return Maze(width, height, std::move(walls), std::move(starts),
                  std::move(goals));
    } catch (const MazeError&) {
      // disconnected layout; redraw
    }
  }
  throw MazeError("maze generation failed after " + std::to_string(kMaxAttempts) +
                  " attempts (seed " + std::to_string(seed) + ", agents " +
                  std::to_string(n_agents) + ", " + std::to_string(width) + "x" +
                  std::to_string(height) + ", density " +
                  std::to_string(wall_density) + ")");
}

WorldState WorldState::initial(const Maze& maze) {
  WorldState s;
  s.positions.resize(maze.n_agents());
  for (int i = 0; i < maze.n_agents(); ++i) s.positions[i].cell = maze.starts()[i];
  s.step = 0;
  s.goal_claims.assign(maze.n_goals(), kUnclaimed);
  return s;
}

bool WorldState::all_absorbed() const {
  for (const auto& p : positions)
    if (!p.absorbed()) return false;
  return true;
}

void step(const Maze& maze, WorldState& state, std::span<const Action> joint,
          double reward_value, std::span<double> rewards_out) {
  const int n = static_cast<int>(state.positions.size());
  state.step += 1;

  // Simultaneous move: gather per-goal entrants before resolving claims.
  int entrants[10];  // first entrant per goal this step, kTieClaim on ties
  for (int g = 0; g < maze.n_goals(); ++g) entrants[g] = kUnclaimed;

  for (int i = 0; i < n; ++i) {
    rewards_out[i] = 0.0;
    AgentPosition& pos = state.positions[i];
    if (pos.absorbed()) continue;
    pos.cell = maze.next_cell(pos.cell, joint[i]);
    int g = maze.goal_at(pos.cell);
    if (g >= 0) {
      pos.arrived_goal = g;
      pos.arrival_step = state.step;
      entrants[g] = (entrants[g] == kUnclaimed) ? i : kTieClaim;
    }
  }

  for (int g = 0; g < maze.n_goals(); ++g) {
    if (entrants[g] == kUnclaimed) continue;
    if (state.goal_claims[g] == kUnclaimed) {
      state.goal_claims[g] = entrants[g];
      if (entrants[g] >= 0) rewards_out[entrants[g]] = reward_value;
    }
    // Already claimed or tied: late entrants absorb unpaid.
  }
}

StepOutcome step(const Maze& maze, WorldState& state,
                 std::span<const Action> joint, double reward_value) {
  StepOutcome out;
  out.rewards.resize(state.positions.size());
  step(maze, state, joint, reward_value, out.rewards);
  for (size_t i = 0; i < state.positions.size(); ++i) {
    const auto& p = state.positions[i];
    if (p.absorbed() && p.arrival_step == state.step)
      out.arrivals.push_back({static_cast<int>(i), p.arrived_goal, p.arrival_step});
  }
  return out;
}

bool is_episode_done(const WorldState& state, int max_step) {
  return state.step >= max_step || state.all_absorbed();
}

Maze load_maze_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MazeError("cannot open maze file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Maze::parse(buf.str());
}

void save_maze_file(const Maze& maze, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MazeError("cannot write maze file: " + path);
  out << maze.serialize();
}

}  // namespace dirl
