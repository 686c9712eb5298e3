#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlplan/model/region.hpp"

namespace ltlplan::model {

enum class Foot { Left, Right };

const char* to_string(Foot f);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

struct CircleSet {
  Point p1{0.0, 0.10};
  Point p2{0.0, 0.35};
  double r1 = 0.60;
  double r2 = 0.35;
};

/// Circle centers are given in the previous-foot frame for a left-foot
/// step; right-foot steps use the centers mirrored across the x axis.
struct ReachabilityParams {
  CircleSet nominal;
  CircleSet reduced{{0.0, 0.15}, {0.0, 0.275}, 0.30, 0.175};
};

struct GoalTolerance {
  double position = 0.05;
  double theta = 0.1;
};

struct SolverOverrides {
  std::optional<double> time_limit;
  std::optional<double> gap;
  std::optional<long> node_limit;
  std::optional<int> linearize_k;
};

/// Where an atom's per-step binaries come from.
struct AtomSource {
  enum Kind { Region, LeftLeg, RightLeg } kind = Region;
  std::string region;
};

struct Scenario {
  std::string name;
  int num_steps = 2;
  Pose goal;
  std::array<Pose, 2> initial_stance;
  std::vector<Region> regions;
  Mat3 Q{{{1000, 0, 0}, {0, 1000, 0}, {0, 0, 100}}};
  Mat3 R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  ReachabilityParams reach;
  std::vector<std::string> specs;
  /// Explicit atom declarations; region atoms p_<name> and the foot atoms
  /// are always available.
  std::map<std::string, AtomSource> atoms;
  bool contact_ordering = false;
  std::vector<std::string> reduced_stride_regions;
  Foot first_foot = Foot::Right;
  Box workspace;
  GoalTolerance goal_tolerance;
  SolverOverrides solver;

  int region_index(const std::string& name) const;  // -1 when absent
  /// Foot of step j (1-based) under fixed alternation.
  Foot foot_of(int step) const;
};

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses an angle given as a number or as text such as "pi/2", "-3pi/4",
/// "0.25*pi". Throws std::invalid_argument on malformed input.
double parse_angle(const std::string& text);

Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& json_text);

/// Load-time checks shared by both entry points.
void validate(const Scenario& s);

/// Atom name -> source, combining the default convention with explicit
/// declarations.
std::map<std::string, AtomSource> atom_table(const Scenario& s);

}  // namespace ltlplan::model
