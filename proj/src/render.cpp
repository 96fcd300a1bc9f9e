#include "dirl/render.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dirl {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::string qtables_to_csv(const std::vector<QTable>& tables, const Maze& maze) {
  std::string out = "agent,row,col,action,q\n";
  for (size_t agent = 0; agent < tables.size(); ++agent) {
    const QTable& q = tables[agent];
    if (q.width() != maze.width() || q.height() != maze.height())
      throw std::runtime_error("q-table shape does not match maze");
    for (int y = 0; y < maze.height(); ++y)
      for (int x = 0; x < maze.width(); ++x) {
        if (maze.is_wall({x, y})) continue;
        for (Action a : kAllActions) {
          out += std::to_string(agent) + ',' + std::to_string(y) + ',' +
                 std::to_string(x) + ',' + action_name(a) + ',' +
                 fmt("%.6f", q.get({x, y}, a)) + '\n';
        }
      }
  }
  return out;
}

std::vector<QTable> qtables_from_csv(const std::string& text, const Maze& maze) {
  std::vector<QTable> tables;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == "agent,row,col,action,q") continue;
    }
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 5) throw std::runtime_error("bad q-table CSV line: " + line);
    int agent = std::stoi(f[0]);
    int row = std::stoi(f[1]);
    int col = std::stoi(f[2]);
    Action a = action_from_name(f[3]);
    double q = std::stod(f[4]);
    if (agent < 0 || agent > 64) throw std::runtime_error("bad agent index in q-table CSV");
    if (static_cast<int>(tables.size()) < agent + 1)
      tables.resize(agent + 1, QTable(maze.width(), maze.height()));
    Cell c{col, row};
    if (!maze.in_bounds(c))
      throw std::runtime_error("q-table cell out of maze bounds: " + line);
    if (maze.is_wall(c))
      throw std::runtime_error("q-table entry on a wall cell: " + line);
    tables[agent].set(c, a, q);
  }
  if (tables.empty()) throw std::runtime_error("empty q-table CSV");
  return tables;
}

std::string render_ascii(const std::vector<QTable>& tables, const Maze& maze) {
  std::string out;
  for (size_t agent = 0; agent < tables.size(); ++agent) {
    const QTable& q = tables[agent];
    if (q.width() != maze.width() || q.height() != maze.height())
      throw std::runtime_error("q-table shape does not match maze");
    out += "agent " + std::to_string(agent) + " (" +
           std::string(1, static_cast<char>('A' + agent)) + ")\n";
    // argmax arrows
    for (int y = 0; y < maze.height(); ++y) {
      for (int x = 0; x < maze.width(); ++x) {
        Cell c{x, y};
        if (maze.is_wall(c)) {
          out += '#';
        } else if (maze.goal_at(c) >= 0) {
          out += static_cast<char>('0' + maze.goal_at(c));
        } else {
          out += action_arrow(q.greedy_action(c));
        }
      }
      out += '\n';
    }
    // max-Q values
    for (int y = 0; y < maze.height(); ++y) {
      for (int x = 0; x < maze.width(); ++x) {
        Cell c{x, y};
        if (x) out += ' ';
        out += maze.is_wall(c) ? "   #####" : fmt("%8.3f", q.max_q(c));
      }
      out += '\n';
    }
    // greedy trajectory from the agent's own start
    if (agent < maze.starts().size()) {
      auto path = greedy_trajectory(q, maze, maze.starts()[agent], 100);
      out += "trajectory:";
      for (const Cell& c : path)
        out += " (" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

namespace {

constexpr int kCellPx = 48;
constexpr int kMargin = 8;
constexpr int kPanelGap = 24;

void svg_arrow(std::string& out, int cx, int cy, Action a) {
  // short arrow from the cell center along the action direction
  int dx = 0, dy = 0;
  switch (a) {
    case Action::kUp: dy = -1; break;
    case Action::kDown: dy = 1; break;
    case Action::kLeft: dx = -1; break;
    case Action::kRight: dx = 1; break;
  }
  const int len = kCellPx / 3;
  int x2 = cx + dx * len, y2 = cy + dy * len;
  out += "<line x1=\"" + std::to_string(cx) + "\" y1=\"" + std::to_string(cy) +
         "\" x2=\"" + std::to_string(x2) + "\" y2=\"" + std::to_string(y2) +
         "\" stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#ah)\"/>\n";
}

}  // namespace

std::string render_svg(const std::vector<QTable>& tables, const Maze& maze) {
  const int panel_w = maze.width() * kCellPx;
  const int panel_h = maze.height() * kCellPx;
  const int total_w = panel_w + 2 * kMargin;
  const int total_h =
      kMargin + static_cast<int>(tables.size()) * (panel_h + kPanelGap);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(total_w) + "\" height=\"" + std::to_string(total_h) +
         "\">\n";
  out += "<defs><marker id=\"ah\" markerWidth=\"6\" markerHeight=\"6\" "
         "refX=\"5\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" "
         "fill=\"black\"/></marker></defs>\n";

  for (size_t agent = 0; agent < tables.size(); ++agent) {
    const QTable& q = tables[agent];
    if (q.width() != maze.width() || q.height() != maze.height())
      throw std::runtime_error("q-table shape does not match maze");
    const int ox = kMargin;
    const int oy = kMargin + static_cast<int>(agent) * (panel_h + kPanelGap);
    out += "<g>\n";
    for (int y = 0; y < maze.height(); ++y) {
      for (int x = 0; x < maze.width(); ++x) {
        Cell c{x, y};
        const int px = ox + x * kCellPx;
        const int py = oy + y * kCellPx;
        std::string fill = "white";
        if (maze.is_wall(c)) fill = "#444444";
        else if (maze.goal_at(c) >= 0) fill = "#c9a0dc";
        else {
          for (size_t s = 0; s < maze.starts().size(); ++s)
            if (maze.starts()[s] == c) fill = "#f2f2f2";
        }
        out += "<rect x=\"" + std::to_string(px) + "\" y=\"" + std::to_string(py) +
               "\" width=\"" + std::to_string(kCellPx) + "\" height=\"" +
               std::to_string(kCellPx) +
               "\" fill=\"" + fill + "\" stroke=\"#999999\"/>\n";
        if (maze.is_wall(c)) continue;
        if (maze.goal_at(c) >= 0) {
          out += "<text x=\"" + std::to_string(px + kCellPx / 2) + "\" y=\"" +
                 std::to_string(py + kCellPx / 2 + 4) +
                 "\" font-size=\"14\" text-anchor=\"middle\">" +
                 maze.goal_label(maze.goal_at(c)) + "</text>\n";
          continue;
        }
        out += "<text x=\"" + std::to_string(px + 3) + "\" y=\"" +
               std::to_string(py + 12) +
               "\" font-size=\"9\" fill=\"#cc0000\">" +
               fmt("%.6f", q.max_q(c)) + "</text>\n";
        svg_arrow(out, px + kCellPx / 2, py + kCellPx / 2 + 6,
                  q.greedy_action(c));
      }
    }
    if (agent < maze.starts().size()) {
      auto path = greedy_trajectory(q, maze, maze.starts()[agent], 100);
      out += "<polyline fill=\"none\" stroke=\"#ff8c00\" stroke-width=\"3\" "
             "points=\"";
      for (size_t i = 0; i < path.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(ox + path[i].x * kCellPx + kCellPx / 2) + ',' +
               std::to_string(oy + path[i].y * kCellPx + kCellPx / 2);
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dirl
