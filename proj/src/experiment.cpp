#include "dirl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace dirl {

const char* algorithm_name(AlgorithmKind a) {
  switch (a) {
    case AlgorithmKind::kDrl: return "drl";
    case AlgorithmKind::kPmrl: return "pmrl";
    case AlgorithmKind::kPs: return "ps";
    case AlgorithmKind::kPlainQ: return "plainq";
  }
  throw std::invalid_argument("bad algorithm");
}

AlgorithmKind algorithm_from_name(const std::string& name) {
  if (name == "drl") return AlgorithmKind::kDrl;
  if (name == "pmrl") return AlgorithmKind::kPmrl;
  if (name == "ps") return AlgorithmKind::kPs;
  if (name == "plainq") return AlgorithmKind::kPlainQ;
  throw std::invalid_argument("unknown algorithm: " + name);
}

void ExperimentConfig::validate() const {
  learning.validate();
  direction.validate();
  if (seeds.empty()) throw std::invalid_argument("seed list must not be empty");
  if (iterations <= 0) throw std::invalid_argument("iterations must be positive");
  if (eval_window <= 0) throw std::invalid_argument("eval_window must be positive");
  if (iterations < eval_window)
    throw std::invalid_argument("iterations must be >= eval_window");
}

int joint_steps(const EpisodeRecord& record, int max_step) {
  int latest = 0;
  std::vector<int> seen;
  for (const auto& ep : record.agents) {
    if (ep.arrival_goal < 0) return max_step;  // timed out
    for (int g : seen)
      if (g == ep.arrival_goal) return max_step;  // shared goal
    seen.push_back(ep.arrival_goal);
    latest = std::max(latest, ep.arrival_step);
  }
  return latest;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng agent_rng(uint64_t run_seed, int agent_index) {
  return Rng(splitmix64(run_seed * 0x100000001ULL + static_cast<uint64_t>(agent_index)));
}

namespace {

RunMetrics run_one(const ExperimentConfig& cfg, uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const Maze& maze = cfg.maze;
  const int n = maze.n_agents();

  std::vector<AgentBrain> brains;
  brains.reserve(n);
  std::vector<Rng> rngs;
  rngs.reserve(n);
  for (int i = 0; i < n; ++i) {
    brains.emplace_back(maze);
    rngs.push_back(agent_rng(seed, i));
  }
  const bool directed = cfg.algorithm == AlgorithmKind::kDrl ||
                        cfg.algorithm == AlgorithmKind::kPmrl;
  if (directed) {
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> pick(0, maze.n_goals() - 1);
      brains[i].g_sel = pick(rngs[i]);
    }
  }

  DirectionParams dp = cfg.direction;
  dp.mode = cfg.algorithm == AlgorithmKind::kPmrl ? DirectionMode::kPmrl
                                                  : DirectionMode::kDrl;

  std::ofstream log;
  if (!cfg.episode_log_dir.empty()) {
    std::string path = cfg.episode_log_dir + "/episodes_" +
                       algorithm_name(cfg.algorithm) + "_" + cfg.maze_name +
                       "_seed" + std::to_string(seed) + ".csv";
    log.open(path);
    if (!log) throw std::runtime_error("cannot write episode log: " + path);
    log << episode_log_header(maze.n_goals());
  }

  RunMetrics m;
  m.maze_name = cfg.maze_name;
  m.algorithm = cfg.algorithm;
  m.seed = seed;
  m.per_iteration_joint_steps.reserve(cfg.iterations);

  for (int it = 1; it <= cfg.iterations; ++it) {
    EpisodeRecord rec;
    switch (cfg.algorithm) {
      case AlgorithmKind::kDrl:
      case AlgorithmKind::kPmrl:
        rec = run_iteration(brains, maze, cfg.learning, dp, rngs, false, it);
        break;
      case AlgorithmKind::kPs:
        rec = run_iteration_ps(brains, maze, cfg.learning, rngs, false, it);
        break;
      case AlgorithmKind::kPlainQ:
        rec = run_iteration_plainq(brains, maze, cfg.learning, rngs, false, it);
        break;
    }
    m.per_iteration_joint_steps.push_back(joint_steps(rec, cfg.learning.max_step));
    if (log.is_open()) log << episode_log_lines(rec, maze);
  }

  EpisodeRecord eval = greedy_evaluation(brains, maze, cfg.learning.max_step,
                                         cfg.learning.external_reward);
  m.final_joint_steps = joint_steps(eval, cfg.learning.max_step);
  m.final_goals.resize(n);
  std::set<int> distinct;
  m.conflict = false;
  for (int i = 0; i < n; ++i) {
    m.final_goals[i] = eval.agents[i].arrival_goal;
    if (m.final_goals[i] >= 0 && !distinct.insert(m.final_goals[i]).second)
      m.conflict = true;
  }

  const auto window_begin =
      m.per_iteration_joint_steps.end() - cfg.eval_window;
  m.window_min_steps =
      *std::min_element(window_begin, m.per_iteration_joint_steps.end());

  m.final_qtables.reserve(n);
  for (const auto& brain : brains) m.final_qtables.push_back(brain.qtable);

  m.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return m;
}

int worker_count(size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("DIRL_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) hw = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<size_t>(hw, jobs));
}

}  // namespace

std::vector<RunMetrics> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const size_t n_runs = config.seeds.size();
  std::vector<RunMetrics> out(n_runs);

  const int workers = worker_count(n_runs);
  if (workers <= 1) {
    for (size_t i = 0; i < n_runs; ++i) out[i] = run_one(config, config.seeds[i]);
    return out;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n_runs) return;
      try {
        out[i] = run_one(config, config.seeds[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string metrics_csv_header() {
  return "maze,algorithm,seed,final_joint_steps,window_min_steps,conflict,"
         "goal_assignment,duration_ms\n";
}

namespace {

std::string assignment_string(const std::vector<int>& goals) {
  std::string s;
  for (size_t i = 0; i < goals.size(); ++i) {
    if (i) s += '|';
    s += goals[i] >= 0 ? "G" + std::to_string(goals[i]) : "-";
  }
  return s;
}

}  // namespace

std::string metrics_csv(const std::vector<RunMetrics>& rows, bool with_header) {
  std::string out = with_header ? metrics_csv_header() : "";
  for (const auto& m : rows) {
    out += m.maze_name;
    out += ',';
    out += algorithm_name(m.algorithm);
    out += ',' + std::to_string(m.seed);
    out += ',' + std::to_string(m.final_joint_steps);
    out += ',' + std::to_string(m.window_min_steps);
    out += ',';
    out += m.conflict ? "true" : "false";
    out += ',' + assignment_string(m.final_goals);
    out += ',' + std::to_string(m.duration_ms);
    out += '\n';
  }
  return out;
}

std::vector<RunMetrics> parse_metrics_csv(const std::string& text) {
  std::vector<RunMetrics> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("maze,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 8) throw std::runtime_error("bad results CSV line: " + line);
    RunMetrics m;
    m.maze_name = f[0];
    m.algorithm = algorithm_from_name(f[1]);
    m.seed = std::stoull(f[2]);
    m.final_joint_steps = std::stoi(f[3]);
    m.window_min_steps = std::stoi(f[4]);
    m.conflict = f[5] == "true";
    std::istringstream gs(f[6]);
    std::string label;
    while (std::getline(gs, label, '|'))
      m.final_goals.push_back(label == "-" ? -1 : std::stoi(label.substr(1)));
    m.duration_ms = std::stoll(f[7]);
    rows.push_back(std::move(m));
  }
  return rows;
}

std::string summarize(const std::vector<RunMetrics>& rows) {
  if (rows.empty()) throw std::invalid_argument("no metrics to summarize");

  // agent count -> maze -> algorithm -> per-seed final steps
  std::map<int, std::map<std::string, std::map<std::string, std::vector<const RunMetrics*>>>>
      grouped;
  for (const auto& m : rows)
    grouped[static_cast<int>(m.final_goals.size())][m.maze_name]
           [algorithm_name(m.algorithm)].push_back(&m);

  std::string out;
  bool first_section = true;
  for (const auto& [agents, mazes] : grouped) {
    if (!first_section) out += '\n';
    first_section = false;
    out += "# agents=" + std::to_string(agents) + '\n';

    std::set<std::string> algos;
    for (const auto& [_, by_algo] : mazes)
      for (const auto& [algo, __] : by_algo) algos.insert(algo);

    out += "algorithm";
    for (const auto& [maze_name, _] : mazes) out += ',' + maze_name;
    out += '\n';
    for (const auto& algo : algos) {
      std::string min_row = algo;
      std::string mean_row = algo + " (mean)";
      std::string rate_row = algo + " (success rate)";
      for (const auto& [maze_name, by_algo] : mazes) {
        auto it = by_algo.find(algo);
        if (it == by_algo.end()) {
          min_row += ",-";
          mean_row += ",-";
          rate_row += ",-";
          continue;
        }
        int mn = INT32_MAX;
        double sum = 0.0;
        int ok = 0;
        for (const RunMetrics* m : it->second) {
          mn = std::min(mn, m->final_joint_steps);
          sum += m->final_joint_steps;
          bool arrived_all = true;
          for (int g : m->final_goals) arrived_all &= g >= 0;
          if (!m->conflict && arrived_all) ++ok;
        }
        char buf[32];
        min_row += ',' + std::to_string(mn);
        std::snprintf(buf, sizeof(buf), ",%.2f", sum / it->second.size());
        mean_row += buf;
        std::snprintf(buf, sizeof(buf), ",%.2f",
                      static_cast<double>(ok) / it->second.size());
        rate_row += buf;
      }
      out += min_row + '\n' + mean_row + '\n' + rate_row + '\n';
    }
  }
  return out;
}

}  // namespace dirl
