#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dirl/cli.hpp"

namespace {

// "5x5" -> (5, 5)
bool parse_size(const std::string& s, int& w, int& h) {
  auto x = s.find('x');
  if (x == std::string::npos) return false;
  try {
    w = std::stoi(s.substr(0, x));
    h = std::stoi(s.substr(x + 1));
  } catch (...) {
    return false;
  }
  return w > 0 && h > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized multi-agent Q-learning on grid mazes"};
  app.require_subcommand(1);

  dirl::cli::GenOptions gen;
  std::string gen_size = "5x5";
  auto* cmd_gen = app.add_subcommand("gen", "Generate a random maze");
  cmd_gen->add_option("--seed", gen.seed, "Generator seed");
  cmd_gen->add_option("--agents", gen.agents, "Number of agents (= goals)");
  cmd_gen->add_option("--size", gen_size, "Grid size WxH");
  cmd_gen->add_option("--density", gen.density, "Wall density in [0,1)");
  cmd_gen->add_option("--out", gen.out_path, "Output maze file");

  dirl::cli::RunOptions run;
  std::string config_path;
  auto* cmd_run = app.add_subcommand("run", "Train and evaluate one algorithm");
  cmd_run->add_option("--config", config_path, "JSON config file (flags override)");
  auto* f_algo = cmd_run->add_option("--algo", run.algo, "drl|pmrl|ps|plainq");
  auto* f_maze = cmd_run->add_option("--maze", run.maze_path, "Maze file");
  auto* f_preset = cmd_run->add_option("--preset", run.preset, "desk|paper");
  auto* f_seeds = cmd_run->add_option("--seeds", run.seeds, "Number of seeds (1..N)");
  auto* f_iters = cmd_run->add_option("--iterations", run.iterations, "Training iterations");
  auto* f_alpha = cmd_run->add_option("--alpha", run.alpha, "Learning rate");
  auto* f_gamma = cmd_run->add_option("--gamma", run.gamma, "Discount rate");
  auto* f_eps = cmd_run->add_option("--epsilon", run.epsilon, "Exploration probability");
  auto* f_delta = cmd_run->add_option("--delta", run.delta, "Internal reward offset");
  auto* f_th = cmd_run->add_option("--threshold", run.threshold, "Mean-reward threshold");
  auto* f_grp = cmd_run->add_option("--goal-random-prob", run.goal_random_prob,
                                    "Random goal re-selection probability");
  auto* f_out = cmd_run->add_option("--out", run.out_dir, "Output directory");
  auto* f_log = cmd_run->add_flag("--episode-log", run.episode_log,
                                  "Write per-episode CSV logs");
  auto* f_reward = cmd_run->add_option("--reward", run.reward, "External reward value");
  auto* f_maxstep = cmd_run->add_option("--max-step", run.max_step, "Step cap per episode");
  auto* f_window = cmd_run->add_option("--eval-window", run.eval_window,
                                       "Trailing window for min joint steps");

  dirl::cli::RenderOptions render;
  auto* cmd_render = app.add_subcommand("render", "Render a Q-table dump");
  cmd_render->add_option("--qtable", render.qtable_path, "Q-table CSV")->required();
  cmd_render->add_option("--maze", render.maze_path, "Maze file")->required();
  cmd_render->add_option("--format", render.format, "ascii|svg");
  cmd_render->add_option("--out", render.out_path, "Output file (default stdout)");

  dirl::cli::TableOptions table;
  auto* cmd_table = app.add_subcommand("table", "Summarize results CSVs");
  cmd_table->add_option("--results", table.results_dir, "Results directory")->required();
  cmd_table->add_option("--out", table.out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_gen->parsed()) {
      if (!parse_size(gen_size, gen.width, gen.height)) {
        std::cerr << "gen: bad --size, expected WxH\n";
        return 2;
      }
      return dirl::cli::cmd_gen(gen, std::cout, std::cerr);
    }
    if (cmd_run->parsed()) {
      if (!config_path.empty()) {
        dirl::cli::RunOptions from_file = dirl::cli::load_run_config(config_path);
        // flags given on the command line take precedence over the file
        if (!f_algo->count()) run.algo = from_file.algo;
        if (!f_maze->count()) run.maze_path = from_file.maze_path;
        if (!f_preset->count()) run.preset = from_file.preset;
        if (!f_seeds->count()) run.seeds = from_file.seeds;
        if (!f_iters->count()) run.iterations = from_file.iterations;
        if (!f_alpha->count()) run.alpha = from_file.alpha;
        if (!f_gamma->count()) run.gamma = from_file.gamma;
        if (!f_eps->count()) run.epsilon = from_file.epsilon;
        if (!f_delta->count()) run.delta = from_file.delta;
        if (!f_th->count()) run.threshold = from_file.threshold;
        if (!f_grp->count()) run.goal_random_prob = from_file.goal_random_prob;
        if (!f_out->count()) run.out_dir = from_file.out_dir;
        if (!f_log->count()) run.episode_log = from_file.episode_log;
        if (!f_reward->count()) run.reward = from_file.reward;
        if (!f_maxstep->count()) run.max_step = from_file.max_step;
        if (!f_window->count()) run.eval_window = from_file.eval_window;
      }
      return dirl::cli::cmd_run(run, std::cout, std::cerr);
    }
    if (cmd_render->parsed())
      return dirl::cli::cmd_render(render, std::cout, std::cerr);
    if (cmd_table->parsed())
      return dirl::cli::cmd_table(table, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
