#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dirl/cli.hpp"
#include "dirl/experiment.hpp"
#include "dirl/oracle.hpp"
#include "dirl/render.hpp"

namespace py = pybind11;
using namespace dirl;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decentralized multi-agent Q-learning on grid mazes";

  py::class_<Cell>(m, "Cell")
      .def(py::init<int, int>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Cell::x)
      .def_readwrite("y", &Cell::y)
      .def("__eq__", [](const Cell& a, const Cell& b) { return a == b; })
      .def("__repr__", [](const Cell& c) {
        return "Cell(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
      });

  py::enum_<Action>(m, "Action")
      .value("UP", Action::kUp)
      .value("DOWN", Action::kDown)
      .value("LEFT", Action::kLeft)
      .value("RIGHT", Action::kRight);

  py::class_<Maze>(m, "Maze")
      .def_static("parse", &Maze::parse, py::arg("text"))
      .def("serialize", &Maze::serialize)
      .def_property_readonly("width", &Maze::width)
      .def_property_readonly("height", &Maze::height)
      .def_property_readonly("n_agents", &Maze::n_agents)
      .def_property_readonly("n_goals", &Maze::n_goals)
      .def_property_readonly("starts", &Maze::starts)
      .def_property_readonly("goals", &Maze::goals)
      .def("is_wall", &Maze::is_wall, py::arg("cell"))
      .def("goal_at", &Maze::goal_at, py::arg("cell"))
      .def("next_cell", &Maze::next_cell, py::arg("cell"), py::arg("action"));

  m.def("load_maze", &Maze::parse, py::arg("text"),
        "Parse and validate a maze from its text form.");
  m.def("generate_maze", &generate_maze, py::arg("seed"), py::arg("n_agents"),
        py::arg("width"), py::arg("height"), py::arg("wall_density"));

  py::class_<LearningParams>(m, "LearningParams")
      .def(py::init<>())
      .def_readwrite("alpha", &LearningParams::alpha)
      .def_readwrite("gamma", &LearningParams::gamma)
      .def_readwrite("epsilon", &LearningParams::epsilon)
      .def_readwrite("max_step", &LearningParams::max_step)
      .def_readwrite("external_reward", &LearningParams::external_reward)
      .def("validate", &LearningParams::validate);

  py::enum_<DirectionMode>(m, "DirectionMode")
      .value("DRL", DirectionMode::kDrl)
      .value("PMRL", DirectionMode::kPmrl);

  py::class_<DirectionParams>(m, "DirectionParams")
      .def(py::init<>())
      .def_readwrite("delta", &DirectionParams::delta)
      .def_readwrite("threshold", &DirectionParams::threshold)
      .def_readwrite("goal_random_prob", &DirectionParams::goal_random_prob)
      .def_readwrite("mode", &DirectionParams::mode);

  py::class_<QTable>(m, "QTable")
      .def(py::init<int, int, double>(), py::arg("width"), py::arg("height"),
           py::arg("initial_q") = 0.0)
      .def("get", &QTable::get, py::arg("cell"), py::arg("action"))
      .def("set", &QTable::set, py::arg("cell"), py::arg("action"), py::arg("q"))
      .def("max_q", &QTable::max_q, py::arg("cell"))
      .def("greedy_action", &QTable::greedy_action, py::arg("cell"));

  m.def("q_update", &q_update, py::arg("q"), py::arg("s"), py::arg("a"),
        py::arg("reward"), py::arg("s_next"), py::arg("params"));
  m.def("greedy_trajectory", &greedy_trajectory, py::arg("q"), py::arg("maze"),
        py::arg("start"), py::arg("max_step"));

  py::class_<GoalStats>(m, "GoalStats")
      .def(py::init<int>(), py::arg("n_goals"))
      .def_readwrite("bid", &GoalStats::bid)
      .def_readwrite("t", &GoalStats::t)
      .def_readwrite("n", &GoalStats::n)
      .def_readwrite("r_sum", &GoalStats::r_sum)
      .def_readwrite("c", &GoalStats::c)
      .def("record_steps", &GoalStats::record_steps, py::arg("goal"),
           py::arg("steps"));

  m.def("internal_reward", &internal_reward, py::arg("stats"), py::arg("goal"),
        py::arg("was_first"), py::arg("r"), py::arg("gamma"), py::arg("delta"));
  m.def("update_goal_value", &update_goal_value, py::arg("stats"),
        py::arg("goal"), py::arg("condition_met"));
  m.def("drl_condition", &drl_condition, py::arg("stats"), py::arg("goal"),
        py::arg("threshold"));
  m.def("ps_terminal_reward", &ps_terminal_reward, py::arg("r"),
        py::arg("n_steps"), py::arg("success"));

  m.def("bfs_distances", [](const Maze& maze, Cell source) {
    return oracle::bfs_shortest_paths(maze, source).dist;
  }, py::arg("maze"), py::arg("source"),
     "Per-cell BFS distances (row-major), -1 where unreachable.");
  m.def("optimal_assignment", [](const Maze& maze) {
    auto a = oracle::optimal_assignment(maze);
    return py::make_tuple(a.goal_of_agent, a.makespan);
  }, py::arg("maze"));
  m.def("value_iteration", &oracle::value_iteration, py::arg("maze"),
        py::arg("goal"), py::arg("gamma"), py::arg("reward"), py::arg("tol"));

  py::enum_<AlgorithmKind>(m, "Algorithm")
      .value("DRL", AlgorithmKind::kDrl)
      .value("PMRL", AlgorithmKind::kPmrl)
      .value("PS", AlgorithmKind::kPs)
      .value("PLAINQ", AlgorithmKind::kPlainQ);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("algorithm", &ExperimentConfig::algorithm)
      .def_readwrite("maze_name", &ExperimentConfig::maze_name)
      .def_readwrite("maze", &ExperimentConfig::maze)
      .def_readwrite("iterations", &ExperimentConfig::iterations)
      .def_readwrite("seeds", &ExperimentConfig::seeds)
      .def_readwrite("learning", &ExperimentConfig::learning)
      .def_readwrite("direction", &ExperimentConfig::direction)
      .def_readwrite("eval_window", &ExperimentConfig::eval_window)
      .def_readwrite("episode_log_dir", &ExperimentConfig::episode_log_dir);

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("maze_name", &RunMetrics::maze_name)
      .def_readonly("algorithm", &RunMetrics::algorithm)
      .def_readonly("seed", &RunMetrics::seed)
      .def_readonly("final_joint_steps", &RunMetrics::final_joint_steps)
      .def_readonly("window_min_steps", &RunMetrics::window_min_steps)
      .def_readonly("conflict", &RunMetrics::conflict)
      .def_readonly("final_goals", &RunMetrics::final_goals)
      .def_readonly("duration_ms", &RunMetrics::duration_ms);

  m.def("run_experiment", &run_experiment, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("metrics_csv", &metrics_csv, py::arg("rows"), py::arg("with_header") = true);
  m.def("summarize", &summarize, py::arg("rows"));

  m.def("qtables_to_csv", &qtables_to_csv, py::arg("tables"), py::arg("maze"));
  m.def("render_ascii", &render_ascii, py::arg("tables"), py::arg("maze"));
  m.def("render_svg", &render_svg, py::arg("tables"), py::arg("maze"));
}
