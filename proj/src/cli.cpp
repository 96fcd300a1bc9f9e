#include "dirl/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "dirl/oracle.hpp"
#include "dirl/render.hpp"

namespace fs = std::filesystem;

namespace dirl {
namespace cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace

RunOptions load_run_config(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  RunOptions opt;
  for (const auto& [key, value] : j.items()) {
    if (key == "algo") opt.algo = value.get<std::string>();
    else if (key == "maze") opt.maze_path = value.get<std::string>();
    else if (key == "preset") opt.preset = value.get<std::string>();
    else if (key == "seeds") opt.seeds = value.get<int>();
    else if (key == "iterations") opt.iterations = value.get<int>();
    else if (key == "alpha") opt.alpha = value.get<double>();
    else if (key == "gamma") opt.gamma = value.get<double>();
    else if (key == "epsilon") opt.epsilon = value.get<double>();
    else if (key == "delta") opt.delta = value.get<double>();
    else if (key == "threshold") opt.threshold = value.get<double>();
    else if (key == "goal_random_prob") opt.goal_random_prob = value.get<double>();
    else if (key == "reward") opt.reward = value.get<double>();
    else if (key == "max_step") opt.max_step = value.get<int>();
    else if (key == "eval_window") opt.eval_window = value.get<int>();
    else if (key == "out") opt.out_dir = value.get<std::string>();
    else if (key == "episode_log") opt.episode_log = value.get<bool>();
    else throw std::runtime_error("unknown config key: " + key);
  }
  return opt;
}

int preset_iterations(const std::string& preset, int n_agents) {
  if (preset == "desk") return n_agents <= 2 ? 10000 : 100000;
  if (preset == "paper") return n_agents <= 2 ? 50000 : 500000;
  throw std::runtime_error("unknown preset: " + preset);
}

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    Maze maze = generate_maze(opt.seed, opt.agents, opt.width, opt.height,
                              opt.density);
    if (opt.out_path.empty()) {
      out << maze.serialize();
    } else {
      save_maze_file(maze, opt.out_path);
      out << "wrote " << opt.out_path << "\n";
    }
    oracle::Assignment best = oracle::optimal_assignment(maze);
    out << "optimal makespan: " << best.makespan << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "gen: " << e.what() << "\n";
    return 2;
  }
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig cfg;
    cfg.algorithm = algorithm_from_name(opt.algo);
    if (opt.maze_path.empty()) throw std::runtime_error("--maze is required");
    cfg.maze = load_maze_file(opt.maze_path);
    cfg.maze_name = fs::path(opt.maze_path).stem().string();

    cfg.learning.alpha = opt.alpha;
    cfg.learning.gamma = opt.gamma;
    cfg.learning.epsilon = opt.epsilon;
    cfg.learning.max_step = opt.max_step;
    cfg.learning.external_reward = opt.reward;
    cfg.direction.delta = opt.delta;
    cfg.direction.threshold = opt.threshold;
    cfg.direction.goal_random_prob = opt.goal_random_prob;

    cfg.iterations = opt.iterations > 0
                         ? opt.iterations
                         : preset_iterations(opt.preset.empty() ? "desk" : opt.preset,
                                             cfg.maze.n_agents());
    cfg.eval_window = std::min(opt.eval_window, cfg.iterations);
    if (opt.seeds <= 0) throw std::runtime_error("--seeds must be positive");
    for (int s = 1; s <= opt.seeds; ++s) cfg.seeds.push_back(s);

    fs::create_directories(opt.out_dir);
    if (opt.episode_log) {
      cfg.episode_log_dir = opt.out_dir;
    }

    auto metrics = run_experiment(cfg);

    std::string base = std::string(algorithm_name(cfg.algorithm)) + "_" + cfg.maze_name;
    write_file(opt.out_dir + "/results_" + base + ".csv", metrics_csv(metrics));
    for (const auto& m : metrics) {
      write_file(opt.out_dir + "/qtable_" + base + "_seed" +
                     std::to_string(m.seed) + ".csv",
                 qtables_to_csv(m.final_qtables, cfg.maze));
    }

    for (const auto& m : metrics) {
      out << cfg.maze_name << " " << algorithm_name(cfg.algorithm) << " seed "
          << m.seed << ": final=" << m.final_joint_steps
          << " window_min=" << m.window_min_steps
          << (m.conflict ? " CONFLICT" : "") << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "run: " << e.what() << "\n";
    return 2;
  }
}

int cmd_render(const RenderOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    Maze maze = load_maze_file(opt.maze_path);
    auto tables = qtables_from_csv(read_file(opt.qtable_path), maze);
    std::string rendered;
    if (opt.format == "ascii") rendered = render_ascii(tables, maze);
    else if (opt.format == "svg") rendered = render_svg(tables, maze);
    else throw std::runtime_error("unknown render format: " + opt.format);
    if (opt.out_path.empty()) out << rendered;
    else write_file(opt.out_path, rendered);
    return 0;
  } catch (const std::exception& e) {
    err << "render: " << e.what() << "\n";
    return 2;
  }
}

int cmd_table(const TableOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    std::vector<RunMetrics> rows;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.results_dir)) {
      if (entry.path().extension() == ".csv" &&
          entry.path().filename().string().rfind("results_", 0) == 0)
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      auto parsed = parse_metrics_csv(read_file(p.string()));
      rows.insert(rows.end(), parsed.begin(), parsed.end());
    }
    if (rows.empty())
      throw std::runtime_error("no results_*.csv files in " + opt.results_dir);
    std::string summary = summarize(rows);
    if (opt.out_path.empty()) out << summary;
    else write_file(opt.out_path, summary);
    return 0;
  } catch (const std::exception& e) {
    err << "table: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cli
}  // namespace dirl
