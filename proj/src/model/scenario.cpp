#include "ltlplan/model/scenario.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ltlplan::model {

using nlohmann::json;

const char* to_string(Foot f) { return f == Foot::Left ? "left" : "right"; }

int Scenario::region_index(const std::string& region_name) const {
  for (int r = 0; r < static_cast<int>(regions.size()); ++r) {
    if (regions[r].name() == region_name) return r;
  }
  return -1;
}

Foot Scenario::foot_of(int step) const {
  bool odd = step % 2 == 1;
  if (first_foot == Foot::Right) return odd ? Foot::Right : Foot::Left;
  return odd ? Foot::Left : Foot::Right;
}

ScenarioError::ScenarioError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

double parse_angle(const std::string& text) {
  static const std::regex pi_form(
      R"(^\s*([+-])?\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)",
      std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    double v = std::numbers::pi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      double d = std::stod(m[3].str());
      if (d == 0.0) throw std::invalid_argument("angle '" + text + "' divides by zero");
      v /= d;
    }
    if (m[1].matched && m[1].str() == "-") v = -v;
    return v;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed angle '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) throw std::invalid_argument("malformed angle '" + text + "'");
  return v;
}

namespace {

class Reader {
 public:
  const json& need(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ScenarioError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ScenarioError(path + "." + key, "missing required field");
    return *it;
  }

  double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(path, "expected a finite number");
    return d;
  }

  double angle(const json& v, const std::string& path) {
    if (v.is_string()) {
      try {
        return parse_angle(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(path, e.what());
      }
    }
    return number(v, path);
  }

  int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ScenarioError(path, "expected an integer");
    return v.get<int>();
  }

  std::string string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ScenarioError(path, "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ScenarioError(path, "expected true or false");
    return v.get<bool>();
  }

  Point point(const json& v, const std::string& path) {
    if (v.is_array()) {
      if (v.size() != 2) throw ScenarioError(path, "expected [x, y]");
      return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
    }
    return {number(need(v, "x", path), path + ".x"), number(need(v, "y", path), path + ".y")};
  }

  Pose pose(const json& v, const std::string& path) {
    if (v.is_array()) {
      if (v.size() != 3) throw ScenarioError(path, "expected [x, y, theta]");
      return {number(v[0], path + "[0]"), number(v[1], path + "[1]"), angle(v[2], path + "[2]")};
    }
    Pose p;
    p.x = number(need(v, "x", path), path + ".x");
    p.y = number(need(v, "y", path), path + ".y");
    p.theta = angle(need(v, "theta", path), path + ".theta");
    return p;
  }

  Mat3 matrix(const json& v, const std::string& path) {
    Mat3 m{};
    if (v.is_array() && v.size() == 3 && v[0].is_number()) {
      for (int i = 0; i < 3; ++i) m[i][i] = number(v[i], path + "[" + std::to_string(i) + "]");
      return m;
    }
    if (!v.is_array() || v.size() != 3) throw ScenarioError(path, "expected a 3x3 matrix or a diagonal of 3 numbers");
    for (int i = 0; i < 3; ++i) {
      std::string row = path + "[" + std::to_string(i) + "]";
      if (!v[i].is_array() || v[i].size() != 3) throw ScenarioError(row, "expected 3 numbers");
      for (int j = 0; j < 3; ++j) m[i][j] = number(v[i][j], row + "[" + std::to_string(j) + "]");
    }
    return m;
  }

  CircleSet circles(const json& v, const std::string& path, CircleSet base) {
    if (!v.is_object()) throw ScenarioError(path, "expected an object");
    if (v.contains("p1")) base.p1 = point(v["p1"], path + ".p1");
    if (v.contains("p2")) base.p2 = point(v["p2"], path + ".p2");
    if (v.contains("r1")) base.r1 = number(v["r1"], path + ".r1");
    if (v.contains("r2")) base.r2 = number(v["r2"], path + ".r2");
    return base;
  }

  Region region(const json& v, const std::string& path) {
    std::string name = string(need(v, "name", path), path + ".name");
    static const std::regex ident(R"(^[A-Za-z_][A-Za-z0-9_]*$)");
    if (!std::regex_match(name, ident)) {
      throw ScenarioError(path + ".name", "region names must be identifiers");
    }
    try {
      if (v.contains("vertices")) {
        const json& verts = v["vertices"];
        if (!verts.is_array()) throw ScenarioError(path + ".vertices", "expected an array");
        std::vector<Point> pts;
        for (std::size_t i = 0; i < verts.size(); ++i) {
          pts.push_back(point(verts[i], path + ".vertices[" + std::to_string(i) + "]"));
        }
        return Region::from_vertices(name, std::move(pts));
      }
      const json& a = need(v, "A", path);
      const json& b = need(v, "b", path);
      if (!a.is_array() || !b.is_array() || a.size() != b.size()) {
        throw ScenarioError(path, "A and b must be arrays of equal length");
      }
      std::vector<HalfPlane> rows;
      for (std::size_t i = 0; i < a.size(); ++i) {
        std::string rp = path + ".A[" + std::to_string(i) + "]";
        if (!a[i].is_array() || a[i].size() < 2 || a[i].size() > 3) {
          throw ScenarioError(rp, "expected 2 or 3 coefficients");
        }
        if (a[i].size() == 3 && number(a[i][2], rp + "[2]") != 0.0) {
          throw ScenarioError(rp + "[2]", "regions constrain position only; the theta column must be 0");
        }
        rows.push_back({number(a[i][0], rp + "[0]"), number(a[i][1], rp + "[1]"),
                        number(b[i], path + ".b[" + std::to_string(i) + "]")});
      }
      return Region::from_halfplanes(name, std::move(rows));
    } catch (const RegionError& e) {
      throw ScenarioError(path, e.what());
    }
  }

  Scenario scenario(const json& root) {
    const std::string p = "scenario";
    if (!root.is_object()) throw ScenarioError(p, "expected a JSON object");
    static const std::set<std::string> known = {
        "name", "num_steps", "goal", "initial_stance", "regions", "cost", "reachability",
        "specs", "atoms", "modes", "workspace", "goal_tolerance", "solver", "description"};
    for (const auto& [key, _] : root.items()) {
      if (!known.contains(key)) throw ScenarioError(p + "." + key, "unknown field");
    }
    Scenario s;
    s.name = root.contains("name") ? string(root["name"], p + ".name") : "scenario";
    s.num_steps = integer(need(root, "num_steps", p), p + ".num_steps");
    s.goal = pose(need(root, "goal", p), p + ".goal");
    const json& stance = need(root, "initial_stance", p);
    if (!stance.is_array() || stance.size() != 2) {
      throw ScenarioError(p + ".initial_stance", "expected exactly two poses");
    }
    for (int i = 0; i < 2; ++i) {
      s.initial_stance[i] = pose(stance[i], p + ".initial_stance[" + std::to_string(i) + "]");
    }
    const json& regions = need(root, "regions", p);
    if (!regions.is_array() || regions.empty()) {
      throw ScenarioError(p + ".regions", "expected a nonempty array");
    }
    for (std::size_t i = 0; i < regions.size(); ++i) {
      s.regions.push_back(region(regions[i], p + ".regions[" + std::to_string(i) + "]"));
    }
    if (root.contains("cost")) {
      const json& c = root["cost"];
      if (c.contains("Q")) s.Q = matrix(c["Q"], p + ".cost.Q");
      if (c.contains("R")) s.R = matrix(c["R"], p + ".cost.R");
    }
    if (root.contains("reachability")) {
      const json& r = root["reachability"];
      s.reach.nominal = circles(r, p + ".reachability", s.reach.nominal);
      if (r.contains("reduced")) {
        s.reach.reduced = circles(r["reduced"], p + ".reachability.reduced", s.reach.reduced);
      } else {
        // Radii halved, centers moved halfway toward (0, 0.20).
        const auto& n = s.reach.nominal;
        s.reach.reduced = {{0.5 * n.p1.x, 0.5 * (n.p1.y + 0.20)},
                           {0.5 * n.p2.x, 0.5 * (n.p2.y + 0.20)},
                           0.5 * n.r1,
                           0.5 * n.r2};
      }
    }
    const json& specs = need(root, "specs", p);
    if (!specs.is_array()) throw ScenarioError(p + ".specs", "expected an array of formula strings");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      s.specs.push_back(string(specs[i], p + ".specs[" + std::to_string(i) + "]"));
    }
    if (root.contains("atoms")) {
      const json& a = root["atoms"];
      if (!a.is_object()) throw ScenarioError(p + ".atoms", "expected an object");
      for (const auto& [name, target] : a.items()) {
        std::string t = string(target, p + ".atoms." + name);
        AtomSource src;
        if (t == "lleg") {
          src.kind = AtomSource::LeftLeg;
        } else if (t == "rleg") {
          src.kind = AtomSource::RightLeg;
        } else {
          src.region = t;
        }
        s.atoms[name] = src;
      }
    }
    if (root.contains("modes")) {
      const json& m = root["modes"];
      const std::string mp = p + ".modes";
      if (!m.is_object()) throw ScenarioError(mp, "expected an object");
      if (m.contains("contact_ordering")) s.contact_ordering = boolean(m["contact_ordering"], mp + ".contact_ordering");
      if (m.contains("reduced_stride_regions")) {
        const json& r = m["reduced_stride_regions"];
        if (!r.is_array()) throw ScenarioError(mp + ".reduced_stride_regions", "expected an array");
        for (std::size_t i = 0; i < r.size(); ++i) {
          s.reduced_stride_regions.push_back(
              string(r[i], mp + ".reduced_stride_regions[" + std::to_string(i) + "]"));
        }
      }
      if (m.contains("first_foot")) {
        std::string f = string(m["first_foot"], mp + ".first_foot");
        if (f != "left" && f != "right") throw ScenarioError(mp + ".first_foot", "expected \"left\" or \"right\"");
        s.first_foot = f == "left" ? Foot::Left : Foot::Right;
      }
    }
    if (root.contains("workspace")) {
      const json& w = root["workspace"];
      const std::string wp = p + ".workspace";
      Point xr = point(need(w, "x", wp), wp + ".x");
      Point yr = point(need(w, "y", wp), wp + ".y");
      s.workspace = {xr.x, xr.y, yr.x, yr.y};
    }
    if (root.contains("goal_tolerance")) {
      const json& g = root["goal_tolerance"];
      if (g.contains("position")) s.goal_tolerance.position = number(g["position"], p + ".goal_tolerance.position");
      if (g.contains("theta")) s.goal_tolerance.theta = angle(g["theta"], p + ".goal_tolerance.theta");
    }
    if (root.contains("solver")) {
      const json& o = root["solver"];
      const std::string op = p + ".solver";
      if (o.contains("time_limit")) s.solver.time_limit = number(o["time_limit"], op + ".time_limit");
      if (o.contains("gap")) s.solver.gap = number(o["gap"], op + ".gap");
      if (o.contains("node_limit")) s.solver.node_limit = integer(o["node_limit"], op + ".node_limit");
      if (o.contains("linearize_k")) s.solver.linearize_k = integer(o["linearize_k"], op + ".linearize_k");
    }
    return s;
  }
};

bool is_psd(const Mat3& m) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = m[i][j];
  }
  if ((a - a.transpose()).norm() > 1e-12 * std::max(1.0, a.norm())) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
  return es.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, a.norm());
}

}  // namespace

void validate(const Scenario& s) {
  const std::string p = "scenario";
  if (s.num_steps < 2) throw ScenarioError(p + ".num_steps", "must be at least 2");
  if (s.num_steps > 200) throw ScenarioError(p + ".num_steps", "must be at most 200");
  constexpr double pi = std::numbers::pi;
  if (s.goal.theta < -pi || s.goal.theta > pi) throw ScenarioError(p + ".goal.theta", "must lie in [-pi, pi]");
  if (!is_psd(s.Q)) throw ScenarioError(p + ".cost.Q", "must be symmetric positive semidefinite");
  if (!is_psd(s.R)) throw ScenarioError(p + ".cost.R", "must be symmetric positive semidefinite");
  auto check_circles = [&](const CircleSet& c, const std::string& path) {
    if (!(c.r1 > 0)) throw ScenarioError(path + ".r1", "must be positive");
    if (!(c.r2 > 0)) throw ScenarioError(path + ".r2", "must be positive");
  };
  check_circles(s.reach.nominal, p + ".reachability");
  check_circles(s.reach.reduced, p + ".reachability.reduced");
  if (s.reach.reduced.r1 > s.reach.nominal.r1 || s.reach.reduced.r2 > s.reach.nominal.r2) {
    throw ScenarioError(p + ".reachability.reduced", "reduced radii must not exceed the nominal radii");
  }
  const Box& w = s.workspace;
  if (!(w.xmin < w.xmax) || !(w.ymin < w.ymax)) throw ScenarioError(p + ".workspace", "empty box");
  for (std::size_t i = 0; i < s.regions.size(); ++i) {
    for (std::size_t j = i + 1; j < s.regions.size(); ++j) {
      if (s.regions[i].name() == s.regions[j].name()) {
        throw ScenarioError(p + ".regions[" + std::to_string(j) + "].name",
                            "duplicate region name '" + s.regions[j].name() + "'");
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    const Pose& f = s.initial_stance[i];
    std::string sp = p + ".initial_stance[" + std::to_string(i) + "]";
    if (f.theta < -pi || f.theta > pi) throw ScenarioError(sp + ".theta", "must lie in [-pi, pi]");
    if (f.x < w.xmin || f.x > w.xmax || f.y < w.ymin || f.y > w.ymax) {
      throw ScenarioError(sp, "lies outside the workspace");
    }
    bool inside = false;
    for (const auto& r : s.regions) inside = inside || r.contains({f.x, f.y}, 1e-9);
    if (!inside) throw ScenarioError(sp, "lies in no region");
  }
  if (std::abs(s.initial_stance[1].theta - s.initial_stance[0].theta) > pi / 8 + 1e-12) {
    throw ScenarioError(p + ".initial_stance", "orientation change exceeds pi/8");
  }
  for (const auto& name : s.reduced_stride_regions) {
    if (s.region_index(name) < 0) {
      throw ScenarioError(p + ".modes.reduced_stride_regions", "unknown region '" + name + "'");
    }
  }
  for (const auto& [atom, src] : s.atoms) {
    if (src.kind == AtomSource::Region && s.region_index(src.region) < 0) {
      throw ScenarioError(p + ".atoms." + atom, "unknown region '" + src.region + "'");
    }
  }
  if (s.solver.linearize_k && *s.solver.linearize_k < 3) {
    throw ScenarioError(p + ".solver.linearize_k", "must be at least 3");
  }
  if (s.goal_tolerance.position <= 0 || s.goal_tolerance.theta <= 0) {
    throw ScenarioError(p + ".goal_tolerance", "tolerances must be positive");
  }
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario", std::string("invalid JSON: ") + e.what());
  }
  Scenario s = Reader().scenario(root);
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ScenarioError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

std::map<std::string, AtomSource> atom_table(const Scenario& s) {
  std::map<std::string, AtomSource> table;
  for (const auto& r : s.regions) table["p_" + r.name()] = {AtomSource::Region, r.name()};
  table["p_lleg"] = {AtomSource::LeftLeg, ""};
  table["p_rleg"] = {AtomSource::RightLeg, ""};
  for (const auto& [name, src] : s.atoms) table[name] = src;
  return table;
}

}  // namespace ltlplan::model
