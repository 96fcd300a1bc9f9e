"""Decentralized multi-agent Q-learning on grid mazes.

Thin Python layer over the C++ core: maze handling, the learning
primitives (goal values, internal rewards, Q-updates), brute-force
oracles and the seeded experiment runner.
"""

from dirl._core import (
    Action,
    Algorithm,
    Cell,
    DirectionMode,
    DirectionParams,
    ExperimentConfig,
    GoalStats,
    LearningParams,
    Maze,
    QTable,
    RunMetrics,
    bfs_distances,
    drl_condition,
    generate_maze,
    greedy_trajectory,
    internal_reward,
    load_maze,
    metrics_csv,
    optimal_assignment,
    ps_terminal_reward,
    q_update,
    qtables_to_csv,
    render_ascii,
    render_svg,
    run_experiment,
    summarize,
    update_goal_value,
    value_iteration,
)

__all__ = [
    "Action",
    "Algorithm",
    "Cell",
    "DirectionMode",
    "DirectionParams",
    "ExperimentConfig",
    "GoalStats",
    "LearningParams",
    "Maze",
    "QTable",
    "RunMetrics",
    "bfs_distances",
    "drl_condition",
    "generate_maze",
    "greedy_trajectory",
    "internal_reward",
    "load_maze",
    "metrics_csv",
    "optimal_assignment",
    "ps_terminal_reward",
    "q_update",
    "qtables_to_csv",
    "render_ascii",
    "render_svg",
    "run_experiment",
    "summarize",
    "update_goal_value",
    "value_iteration",
]
