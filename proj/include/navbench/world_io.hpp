#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "navbench/core_world.hpp"

namespace navbench {

// Environment file: header "<cell_size> <W> <H>", then H rows of W glyphs.
// '.' FREE z=0, '#' OBSTACLE, 'o' HOLE, '1'..'9' FREE with floor_z = digit*0.1.
OccupancyEnvironment load_environment(const std::string& path);
OccupancyEnvironment parse_environment(std::istream& in);
std::string serialize_environment(const OccupancyEnvironment& env);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string environment_hash(const OccupancyEnvironment& env);

// NavGraph file: records "node <id> <x> <y> <z>" and "edge <id> <id>".
NavGraph load_nav_graph(const std::string& path);
NavGraph parse_nav_graph(std::istream& in);
std::string serialize_nav_graph(const NavGraph& graph);

// Episode files: one record per line, "key=value" fields named exactly as in
// the type. Waypoints are x,y,z triples joined by ';'; actions are a string
// of F/L/R/S glyphs.
std::vector<Episode> load_episodes(const std::string& path);
std::vector<Episode> parse_episodes(std::istream& in);
std::string serialize_episode(const Episode& episode);
void save_episodes(const std::string& path, const std::vector<Episode>& episodes);

// Trajectory file: header lines (episode id, env hash, start pose), then one
// record per step "t action x y z heading collided" with the post-action pose.
Trajectory load_trajectory(const std::string& path);
Trajectory parse_trajectory(std::istream& in);
std::string serialize_trajectory(const Trajectory& traj, const std::string& env_hash);
void save_trajectory(const std::string& path, const Trajectory& traj,
                     const std::string& env_hash);

// Nav-graph trajectory list: per line "<traj_id> <node_id> <node_id> ...".
struct GraphTrajectory {
  std::string id;
  std::vector<int> node_ids;
};
std::vector<GraphTrajectory> load_graph_trajectories(const std::string& path);

// Instruction map: per line "<traj_id> <token> <token> ...". A trajectory id
// may appear on several lines, one instruction each.
std::map<std::string, std::vector<std::vector<int>>> load_instructions(const std::string& path);

// Node overrides: per line "<node_id> <x> <y> <z>".
std::map<int, Vec3> load_overrides(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Fixed-precision float formatting shared by all writers so identical data
// always serializes to identical bytes.
std::string format_double(double v);

}  // namespace navbench
