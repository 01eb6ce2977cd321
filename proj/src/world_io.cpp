#include "navbench/world_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "navbench/errors.hpp"

namespace navbench {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
}

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    auto last = s.find_last_not_of('0');
    if (last == dot) last -= 1;
    s.erase(last + 1);
  }
  if (s == "-0") s = "0";
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Environment

OccupancyEnvironment parse_environment(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++line_no;
  const auto header = split_ws(line);
  if (header.size() != 3) throw ParseError("header must be '<cell_size> <W> <H>'", line_no);
  const double cell_size = parse_double(header[0], line_no);
  const int width = parse_int(header[1], line_no);
  const int height = parse_int(header[2], line_no);
  if (!(cell_size > 0.0)) throw ParseError("cell_size must be > 0", line_no);
  if (width <= 0 || height <= 0) throw ParseError("grid dimensions must be positive", line_no);

  OccupancyEnvironment env(cell_size, width, height);
  for (int iy = 0; iy < height; ++iy) {
    if (!std::getline(in, line)) throw ParseError("expected " + std::to_string(height) + " rows", line_no + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != width)
      throw ParseError("row has " + std::to_string(line.size()) + " glyphs, expected " + std::to_string(width), line_no);
    for (int ix = 0; ix < width; ++ix) {
      const char g = line[ix];
      Cell& c = env.cell(ix, iy);
      if (g == '.') {
        c = {CellKind::Free, 0.0};
      } else if (g == '#') {
        c = {CellKind::Obstacle, 0.0};
      } else if (g == 'o') {
        c = {CellKind::Hole, 0.0};
      } else if (g >= '1' && g <= '9') {
        c = {CellKind::Free, (g - '0') * 0.1};
      } else {
        throw ParseError(std::string("unknown glyph '") + g + "'", line_no);
      }
    }
  }
  return env;
}

OccupancyEnvironment load_environment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_environment(in);
}

std::string serialize_environment(const OccupancyEnvironment& env) {
  std::string out = format_double(env.cell_size()) + " " + std::to_string(env.width()) + " " +
                    std::to_string(env.height()) + "\n";
  for (int iy = 0; iy < env.height(); ++iy) {
    for (int ix = 0; ix < env.width(); ++ix) {
      const Cell& c = env.cell(ix, iy);
      char g = '.';
      if (c.kind == CellKind::Obstacle) {
        g = '#';
      } else if (c.kind == CellKind::Hole) {
        g = 'o';
      } else if (c.floor_z != 0.0) {
        const int digit = static_cast<int>(std::lround(c.floor_z / 0.1));
        if (digit < 1 || digit > 9 || std::abs(c.floor_z - digit * 0.1) > 1e-9)
          throw InvariantError("floor_z is a multiple of 0.1 in [0, 0.9]");
        g = static_cast<char>('0' + digit);
      }
      out += g;
    }
    out += '\n';
  }
  return out;
}

std::string environment_hash(const OccupancyEnvironment& env) {
  const std::string bytes = serialize_environment(env);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Nav graph

NavGraph parse_nav_graph(std::istream& in) {
  NavGraph graph;
  std::vector<std::tuple<int, int, int>> pending_edges;  // line, a, b
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = split_ws(line);
    if (toks[0] == "node") {
      if (toks.size() != 5) throw ParseError("node record is 'node <id> <x> <y> <z>'", line_no);
      graph.add_node(parse_int(toks[1], line_no),
                     Vec3{parse_double(toks[2], line_no), parse_double(toks[3], line_no),
                          parse_double(toks[4], line_no)});
    } else if (toks[0] == "edge") {
      if (toks.size() != 3) throw ParseError("edge record is 'edge <id> <id>'", line_no);
      pending_edges.emplace_back(line_no, parse_int(toks[1], line_no), parse_int(toks[2], line_no));
    } else {
      throw ParseError("unknown record '" + toks[0] + "'", line_no);
    }
  }
  for (const auto& [at, a, b] : pending_edges) {
    if (!graph.has_node(a) || !graph.has_node(b))
      throw ParseError("edge references unknown node", at);
    if (a == b) throw ParseError("self-edge", at);
    graph.add_edge(a, b);
  }
  return graph;
}

NavGraph load_nav_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_nav_graph(in);
}

std::string serialize_nav_graph(const NavGraph& graph) {
  std::vector<NavGraph::Node> nodes = graph.nodes();
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::string out;
  for (const auto& n : nodes) {
    out += "node " + std::to_string(n.id) + " " + format_double(n.position.x) + " " +
           format_double(n.position.y) + " " + format_double(n.position.z) + "\n";
  }
  for (const auto& e : graph.edges()) {
    out += "edge " + std::to_string(e.first) + " " + std::to_string(e.second) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Episodes

namespace {

std::string actions_to_string(const std::vector<Action>& actions) {
  std::string s;
  s.reserve(actions.size());
  for (Action a : actions) s += action_to_char(a);
  return s;
}

std::vector<Action> actions_from_string(const std::string& s, int line) {
  std::vector<Action> out;
  out.reserve(s.size());
  for (char c : s) {
    try {
      out.push_back(action_from_char(c));
    } catch (const IoError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return out;
}

}  // namespace

std::string serialize_episode(const Episode& e) {
  std::string out = "id=" + e.id;
  out += " instruction=";
  for (std::size_t i = 0; i < e.instruction.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e.instruction[i]);
  }
  out += " start=" + format_double(e.start.x) + "," + format_double(e.start.y) + "," +
         format_double(e.start.z) + "," + format_double(e.start.heading);
  out += " goal=" + format_double(e.goal.x) + "," + format_double(e.goal.y) + "," +
         format_double(e.goal.z);
  out += " reference_waypoints=";
  for (std::size_t i = 0; i < e.reference_waypoints.size(); ++i) {
    if (i) out += ';';
    const Vec3& w = e.reference_waypoints[i];
    out += format_double(w.x) + "," + format_double(w.y) + "," + format_double(w.z);
  }
  out += " reference_actions=" + actions_to_string(e.reference_actions);
  out += " geodesic_reference_length=" + format_double(e.geodesic_reference_length);
  return out;
}

std::vector<Episode> parse_episodes(std::istream& in) {
  std::vector<Episode> episodes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    Episode e;
    bool saw_id = false;
    for (const auto& field : split_ws(line)) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value, got '" + field + "'", line_no);
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "id") {
        e.id = value;
        saw_id = true;
      } else if (key == "instruction") {
        if (!value.empty())
          for (const auto& t : split_on(value, ',')) e.instruction.push_back(parse_int(t, line_no));
      } else if (key == "start") {
        const auto p = split_on(value, ',');
        if (p.size() != 4) throw ParseError("start is x,y,z,heading", line_no);
        e.start = Pose{parse_double(p[0], line_no), parse_double(p[1], line_no),
                       parse_double(p[2], line_no), parse_double(p[3], line_no)};
      } else if (key == "goal") {
        const auto p = split_on(value, ',');
        if (p.size() != 3) throw ParseError("goal is x,y,z", line_no);
        e.goal = Vec3{parse_double(p[0], line_no), parse_double(p[1], line_no), parse_double(p[2], line_no)};
      } else if (key == "reference_waypoints") {
        if (!value.empty()) {
          for (const auto& w : split_on(value, ';')) {
            const auto p = split_on(w, ',');
            if (p.size() != 3) throw ParseError("waypoint is x,y,z", line_no);
            e.reference_waypoints.push_back(
                Vec3{parse_double(p[0], line_no), parse_double(p[1], line_no), parse_double(p[2], line_no)});
          }
        }
      } else if (key == "reference_actions") {
        e.reference_actions = actions_from_string(value, line_no);
      } else if (key == "geodesic_reference_length") {
        e.geodesic_reference_length = parse_double(value, line_no);
      } else {
        throw ParseError("unknown field '" + key + "'", line_no);
      }
    }
    if (!saw_id) throw ParseError("episode record missing id", line_no);
    episodes.push_back(std::move(e));
  }
  return episodes;
}

std::vector<Episode> load_episodes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_episodes(in);
}

void save_episodes(const std::string& path, const std::vector<Episode>& episodes) {
  std::string out;
  for (const auto& e : episodes) out += serialize_episode(e) + "\n";
  write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Trajectories

std::string serialize_trajectory(const Trajectory& traj, const std::string& env_hash) {
  std::string out = "episode " + traj.episode_id + "\n";
  out += "env_hash " + env_hash + "\n";
  const Pose& s = traj.poses.front();
  out += "start " + format_double(s.x) + " " + format_double(s.y) + " " + format_double(s.z) +
         " " + format_double(s.heading) + "\n";
  for (std::size_t t = 0; t < traj.actions.size(); ++t) {
    const Pose& p = traj.poses[t + 1];
    out += std::to_string(t);
    out += ' ';
    out += action_to_char(traj.actions[t]);
    out += ' ';
    out += format_double(p.x) + " " + format_double(p.y) + " " + format_double(p.z) + " " +
           format_double(p.heading) + " " + (traj.collided[t] ? "1" : "0") + "\n";
  }
  return out;
}

Trajectory parse_trajectory(std::istream& in) {
  Trajectory traj;
  std::string line;
  int line_no = 0;
  bool have_start = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = split_ws(line);
    if (toks[0] == "episode") {
      if (toks.size() != 2) throw ParseError("header is 'episode <id>'", line_no);
      traj.episode_id = toks[1];
    } else if (toks[0] == "env_hash") {
      // informational; consumers may cross-check against their environment
    } else if (toks[0] == "start") {
      if (toks.size() != 5) throw ParseError("header is 'start <x> <y> <z> <heading>'", line_no);
      traj.poses.push_back(Pose{parse_double(toks[1], line_no), parse_double(toks[2], line_no),
                                parse_double(toks[3], line_no), parse_double(toks[4], line_no)});
      have_start = true;
    } else {
      if (!have_start) throw ParseError("step record before start pose", line_no);
      if (toks.size() != 7) throw ParseError("step record is 't action x y z heading collided'", line_no);
      if (toks[1].size() != 1) throw ParseError("action is one of F/L/R/S", line_no);
      try {
        traj.actions.push_back(action_from_char(toks[1][0]));
      } catch (const IoError& e) {
        throw ParseError(e.what(), line_no);
      }
      traj.poses.push_back(Pose{parse_double(toks[2], line_no), parse_double(toks[3], line_no),
                                parse_double(toks[4], line_no), parse_double(toks[5], line_no)});
      traj.collided.push_back(parse_int(toks[6], line_no) != 0);
    }
  }
  if (!have_start) throw ParseError("trajectory has no start pose", line_no == 0 ? 1 : line_no);
  return traj;
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_trajectory(in);
}

void save_trajectory(const std::string& path, const Trajectory& traj, const std::string& env_hash) {
  write_text_file(path, serialize_trajectory(traj, env_hash));
}

// ---------------------------------------------------------------------------
// Transfer inputs

std::vector<GraphTrajectory> load_graph_trajectories(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<GraphTrajectory> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = split_ws(line);
    if (toks.size() < 2) throw ParseError("trajectory record is '<id> <node> [<node> ...]'", line_no);
    GraphTrajectory t;
    t.id = toks[0];
    for (std::size_t i = 1; i < toks.size(); ++i) t.node_ids.push_back(parse_int(toks[i], line_no));
    out.push_back(std::move(t));
  }
  return out;
}

std::map<std::string, std::vector<std::vector<int>>> load_instructions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::map<std::string, std::vector<std::vector<int>>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = split_ws(line);
    std::vector<int> tokens;
    for (std::size_t i = 1; i < toks.size(); ++i) tokens.push_back(parse_int(toks[i], line_no));
    out[toks[0]].push_back(std::move(tokens));
  }
  return out;
}

std::map<int, Vec3> load_overrides(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::map<int, Vec3> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = split_ws(line);
    if (toks.size() != 4) throw ParseError("override record is '<node_id> <x> <y> <z>'", line_no);
    out[parse_int(toks[0], line_no)] = Vec3{parse_double(toks[1], line_no),
                                            parse_double(toks[2], line_no),
                                            parse_double(toks[3], line_no)};
  }
  return out;
}

}  // namespace navbench
