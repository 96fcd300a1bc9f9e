#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirl {

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

// Fixed order; deterministic tie-breaks walk this order (Up, Down, Left, Right).
enum class Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

inline constexpr int kNumActions = 4;
inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kUp, Action::kDown, Action::kLeft, Action::kRight};

const char* action_name(Action a);        // "up", "down", "left", "right"
char action_arrow(Action a);              // '^', 'v', '<', '>'
Action action_from_name(const std::string& name);

using JointAction = std::vector<Action>;

struct MazeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Static grid world shared read-only by every agent of a run.
// Cells are addressed as (x, y) with (0, 0) the top-left of the rendered
// grid; Up decreases y. Starts and goals are free cells; goal k carries
// label "G<k>".
class Maze {
 public:
  Maze() = default;
  Maze(int width, int height, std::vector<uint8_t> walls,
       std::vector<Cell> starts, std::vector<Cell> goals);

  // Line-oriented text format: "W H" then H rows of W characters.
  // '#' wall, '.' free, 'A'.. agent starts in alphabetical order,
  // '0'..'9' goals G0..G9. Letters and digits must be contiguous runs
  // starting at 'A' / '0'.
  static Maze parse(const std::string& text);
  std::string serialize() const;

  int width() const { return width_; }
  int height() const { return height_; }
  int n_cells() const { return width_ * height_; }
  int n_agents() const { return static_cast<int>(starts_.size()); }
  int n_goals() const { return static_cast<int>(goals_.size()); }
  const std::vector<Cell>& starts() const { return starts_; }
  const std::vector<Cell>& goals() const { return goals_; }
  std::string goal_label(int g) const { return "G" + std::to_string(g); }

  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell(int idx) const { return {idx % width_, idx / width_}; }
  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool is_wall(Cell c) const { return walls_[index(c)] != 0; }
  bool is_free(Cell c) const { return in_bounds(c) && !is_wall(c); }

  // Goal index occupying the cell, or -1.
  int goal_at(Cell c) const { return goal_at_[index(c)]; }
  int goal_at_index(int idx) const { return goal_at_[idx]; }

  // Deterministic transition; moves into walls or off-grid stay put.
  Cell next_cell(Cell c, Action a) const { return cell(next_[index(c) * kNumActions + static_cast<int>(a)]); }
  int next_index(int idx, Action a) const { return next_[idx * kNumActions + static_cast<int>(a)]; }

  // Throws MazeError unless all structural invariants hold: cells in
  // bounds and pairwise disjoint, goals >= starts >= 1, and every start
  // connected to every goal through free cells.
  void validate() const;

 private:
  void build_tables();

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> walls_;
  std::vector<Cell> starts_;
  std::vector<Cell> goals_;
  std::vector<int32_t> next_;     // n_cells * 4 movement table
  std::vector<int16_t> goal_at_;  // n_cells, -1 where no goal
};

// Deterministic in (seed, n_agents, width, height, wall_density); retries
// placement a bounded number of times and throws MazeError with the
// offending parameters on failure.
Maze generate_maze(uint64_t seed, int n_agents, int width, int height,
                   double wall_density);

inline constexpr int kUnclaimed = -1;
inline constexpr int kTieClaim = -2;

struct AgentPosition {
  Cell cell;
  int arrived_goal = -1;   // goal index once absorbed, else -1
  int arrival_step = -1;
  bool absorbed() const { return arrived_goal >= 0; }
};

// Per-episode mutable state; owned by a single episode loop.
struct WorldState {
  std::vector<AgentPosition> positions;
  int step = 0;
  std::vector<int> goal_claims;  // per goal: agent index, kUnclaimed or kTieClaim

  static WorldState initial(const Maze& maze);
  bool all_absorbed() const;
};

struct Arrival {
  int agent = 0;
  int goal = 0;
  int step = 0;
};

struct StepOutcome {
  std::vector<double> rewards;
  std::vector<Arrival> arrivals;
};

// Advances every non-absorbed agent one cell simultaneously. An agent
// entering an unclaimed goal alone claims it and earns reward_value; a
// simultaneous entry by several agents marks the goal tied and pays
// nobody; entering a claimed or tied goal pays zero. Every agent that
// enters a goal cell absorbs there. rewards_out must hold n_agents slots.
// Entries of `joint` for absorbed agents are ignored.
void step(const Maze& maze, WorldState& state, std::span<const Action> joint,
          double reward_value, std::span<double> rewards_out);

// Convenience wrapper that also reports the arrivals of this transition.
StepOutcome step(const Maze& maze, WorldState& state,
                 std::span<const Action> joint, double reward_value);

// True once every agent is absorbed or the step cap is reached.
bool is_episode_done(const WorldState& state, int max_step);

Maze load_maze_file(const std::string& path);
void save_maze_file(const Maze& maze, const std::string& path);

}  // namespace dirl
