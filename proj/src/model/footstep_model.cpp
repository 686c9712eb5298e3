#include "ltlplan/model/footstep_model.hpp"

#include <cmath>
#include <numbers>

#include "ltlplan/ltl/parser.hpp"
#include "ltlplan/model/trig.hpp"

namespace ltlplan::model {

using solver::AffineExpr;
using solver::Sense;

namespace {

constexpr double kPi = std::numbers::pi;

std::string idx(int a) { return std::to_string(a); }

/// Adds coef * a * b to the objective.
void add_product(solver::Model& m, const AffineExpr& a, const AffineExpr& b, double coef) {
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) m.add_objective_quad(ta.var, tb.var, coef * ta.coef * tb.coef);
    m.add_objective_linear(ta.var, coef * ta.coef * b.constant);
  }
  for (const auto& tb : b.terms) m.add_objective_linear(tb.var, coef * tb.coef * a.constant);
  m.add_objective_constant(coef * a.constant * b.constant);
}

void add_quadratic_form(solver::Model& m, const std::array<AffineExpr, 3>& v, const Mat3& w) {
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (w[a][b] != 0.0) add_product(m, v[a], v[b], w[a][b]);
    }
  }
}

struct Disk {
  Point center;  // in the previous-foot frame, already mirrored
  double radius;
};

/// Displacement of step j from the disk center, as two affine expressions.
std::array<AffineExpr, 2> displacement(const FootstepVars& v, int j, Point p) {
  const int k = j - 1;
  AffineExpr dx;
  dx.add(v.x[k], 1.0).add(v.x[k - 1], -1.0).add(v.c[k], -p.x).add(v.s[k], p.y);
  AffineExpr dy;
  dy.add(v.y[k], 1.0).add(v.y[k - 1], -1.0).add(v.s[k], -p.x).add(v.c[k], -p.y);
  return {dx, dy};
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Guard constant for a disk row that must be slack whenever `others` hold:
/// a point inside some disk of `others` lies within r' + sqrt(2)|p' - p| of
/// this disk's center (the rotation with s, c in [-1, 1] scales by at most
/// sqrt(2)).
double guard_m(const Disk& self, const std::vector<Disk>& others, double inner) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : others) {
    best = std::min(best, o.radius + std::sqrt(2.0) * dist(o.center, self.center));
  }
  return std::max(0.0, best - inner) + 1e-3;
}

struct Guard {
  int var;
  double m;
};

class DiskWriter {
 public:
  DiskWriter(const FootstepVars& v, solver::Model& m, const BuildOptions& o)
      : v_(v), m_(m), opt_(o) {}

  /// Adds the rows for ||d|| <= r, relaxed whenever some guard binary is 0.
  void add(int j, const Disk& d, const std::vector<Guard>& guards, const std::string& tag) {
    auto [dx, dy] = displacement(v_, j, d.center);
    if (opt_.norm == NormRealization::Polygon) {
      const int k = opt_.polygon_sides;
      const double rhs = d.radius * std::cos(kPi / k);
      for (int q = 0; q < k; ++q) {
        double ang = 2.0 * kPi * q / k;
        AffineExpr row;
        row.add(dx, std::cos(ang)).add(dy, std::sin(ang));
        double r = rhs;
        for (const auto& g : guards) {
          // a.d <= rhs + M (1 - g)
          row.add(g.var, g.m);
          r += g.m;
        }
        m_.add_row(tag + "_" + idx(q + 1), row, Sense::LessEqual, r);
      }
      return;
    }
    // Quadratic: ||d - w||^2 <= r^2 with |w| <= sum M (1 - g).
    AffineExpr ex = dx;
    AffineExpr ey = dy;
    if (!guards.empty()) {
      double total = 0.0;
      for (const auto& g : guards) total += g.m;
      int wx = m_.add_continuous(tag + "_wx", -total, total);
      int wy = m_.add_continuous(tag + "_wy", -total, total);
      for (int w : {wx, wy}) {
        AffineExpr up;
        up.add(w, 1.0);
        AffineExpr lo;
        lo.add(w, -1.0);
        for (const auto& g : guards) {
          up.add(g.var, g.m);
          lo.add(g.var, g.m);
        }
        m_.add_row(m_.variable(w).name + "_ub", up, Sense::LessEqual, total);
        m_.add_row(m_.variable(w).name + "_lb", lo, Sense::LessEqual, total);
      }
      ex.add(wx, -1.0);
      ey.add(wy, -1.0);
    }
    solver::QuadraticRow row;
    row.name = tag;
    double constant = 0.0;
    for (const AffineExpr* e : {&ex, &ey}) {
      for (const auto& a : e->terms) {
        for (const auto& b : e->terms) row.quad.push_back({std::min(a.var, b.var), std::max(a.var, b.var), a.coef * b.coef});
        row.linear.push_back({a.var, 2.0 * a.coef * e->constant});
      }
      constant += e->constant * e->constant;
    }
    row.quad = solver::canonical_quad(std::move(row.quad));
    row.linear = solver::canonical_terms(std::move(row.linear));
    row.rhs = d.radius * d.radius - constant;
    m_.add_quadratic_row(std::move(row));
  }

 private:
  const FootstepVars& v_;
  solver::Model& m_;
  const BuildOptions& opt_;
};

std::vector<Disk> disks(const CircleSet& c, Foot foot) {
  return {{circle_center(c.p1, foot), c.r1}, {circle_center(c.p2, foot), c.r2}};
}

}  // namespace

Point circle_center(Point p, Foot foot) { return foot == Foot::Left ? p : Point{p.x, -p.y}; }

FootstepVars allocate_variables(const Scenario& s, solver::Model& m) {
  FootstepVars v;
  const int n = s.num_steps;
  v.steps = n;
  const Box& w = s.workspace;
  for (int j = 1; j <= n; ++j) {
    v.x.push_back(m.add_continuous("x_" + idx(j), w.xmin, w.xmax));
    v.y.push_back(m.add_continuous("y_" + idx(j), w.ymin, w.ymax));
    v.theta.push_back(m.add_continuous("th_" + idx(j), -kPi, kPi));
    v.s.push_back(m.add_continuous("s_" + idx(j), -1.0, 1.0));
    v.c.push_back(m.add_continuous("c_" + idx(j), -1.0, 1.0));
  }
  const int nr = static_cast<int>(s.regions.size());
  v.H.resize(nr);
  v.S.resize(kTrigSegments);
  v.C.resize(kTrigSegments);
  for (int j = 1; j <= n; ++j) {
    for (int r = 0; r < nr; ++r) v.H[r].push_back(m.add_binary("H_" + idx(r + 1) + "_" + idx(j)));
    for (int l = 0; l < kTrigSegments; ++l) v.S[l].push_back(m.add_binary("S_" + idx(l + 1) + "_" + idx(j)));
    for (int l = 0; l < kTrigSegments; ++l) v.C[l].push_back(m.add_binary("C_" + idx(l + 1) + "_" + idx(j)));
    if (s.contact_ordering) {
      v.LL.push_back(m.add_binary("LL_" + idx(j)));
      v.RL.push_back(m.add_binary("RL_" + idx(j)));
    }
  }

  // The first two footholds are fixed, together with every binary that
  // describes them.
  for (int k = 0; k < 2; ++k) {
    const Pose& f = s.initial_stance[k];
    m.set_bounds(v.x[k], f.x, f.x);
    m.set_bounds(v.y[k], f.y, f.y);
    m.set_bounds(v.theta[k], f.theta, f.theta);
    m.set_bounds(v.s[k], pw_sin(f.theta), pw_sin(f.theta));
    m.set_bounds(v.c[k], pw_cos(f.theta), pw_cos(f.theta));
    int region = -1;
    for (int r = 0; r < nr && region < 0; ++r) {
      if (s.regions[r].contains({f.x, f.y}, 1e-9)) region = r;
    }
    for (int r = 0; r < nr; ++r) {
      double val = r == region ? 1.0 : 0.0;
      m.set_bounds(v.H[r][k], val, val);
    }
    int ss = sin_segment(f.theta);
    int cs = cos_segment(f.theta);
    for (int l = 0; l < kTrigSegments; ++l) {
      m.set_bounds(v.S[l][k], l == ss ? 1.0 : 0.0, l == ss ? 1.0 : 0.0);
      m.set_bounds(v.C[l][k], l == cs ? 1.0 : 0.0, l == cs ? 1.0 : 0.0);
    }
    if (s.contact_ordering) {
      bool left = s.foot_of(k + 1) == Foot::Left;
      m.set_bounds(v.LL[k], left ? 1.0 : 0.0, left ? 1.0 : 0.0);
      m.set_bounds(v.RL[k], left ? 0.0 : 1.0, left ? 0.0 : 1.0);
    }
  }
  return v;
}

void build_objective(const Scenario& s, const FootstepVars& v, solver::Model& m) {
  const int n = v.steps;
  auto pose = [&](int j) {
    std::array<AffineExpr, 3> f;
    f[0].add(v.x[j - 1], 1.0);
    f[1].add(v.y[j - 1], 1.0);
    f[2].add(v.theta[j - 1], 1.0);
    return f;
  };
  auto terminal = pose(n);
  terminal[0].constant = -s.goal.x;
  terminal[1].constant = -s.goal.y;
  terminal[2].constant = -s.goal.theta;
  add_quadratic_form(m, terminal, s.Q);
  for (int j = 1; j < n; ++j) {
    auto a = pose(j + 1);
    auto b = pose(j);
    for (int i = 0; i < 3; ++i) a[i].add(b[i], -1.0);
    add_quadratic_form(m, a, s.R);
  }
  m.finalize_objective();
}

void add_region_assignment(const Scenario& s, const FootstepVars& v, solver::Model& m) {
  const int nr = static_cast<int>(s.regions.size());
  for (int j = 1; j <= v.steps; ++j) {
    std::vector<int> group;
    AffineExpr sum;
    for (int r = 0; r < nr; ++r) {
      group.push_back(v.H[r][j - 1]);
      sum.add(v.H[r][j - 1], 1.0);
    }
    m.add_row("Hsum_" + idx(j), sum, Sense::Equal, 1.0);
    if (j >= 3) m.add_group(group);
  }
  for (int j = 3; j <= v.steps; ++j) {
    for (int r = 0; r < nr; ++r) {
      const Region& reg = s.regions[r];
      for (int q = 0; q < static_cast<int>(reg.rows().size()); ++q) {
        const HalfPlane& h = reg.rows()[q];
        double big = reg.big_m(q, s.workspace);
        if (big <= 0.0) continue;  // the whole workspace satisfies this row
        // a.p - b <= M (1 - H)
        AffineExpr row;
        row.add(v.x[j - 1], h.ax).add(v.y[j - 1], h.ay).add(v.H[r][j - 1], big);
        m.add_row("reg_" + idx(r + 1) + "_" + idx(q + 1) + "_" + idx(j), row, Sense::LessEqual,
                  h.b + big);
      }
    }
  }
}

void add_trig_approx(const FootstepVars& v, solver::Model& m) {
  const TrigApprox& t = trig_approx();
  auto family = [&](const std::array<TrigSegment, kTrigSegments>& segs,
                    const std::vector<std::vector<int>>& bins, const std::vector<int>& value,
                    const std::string& tag) {
    for (int j = 1; j <= v.steps; ++j) {
      std::vector<int> group;
      AffineExpr sum;
      for (int l = 0; l < kTrigSegments; ++l) {
        group.push_back(bins[l][j - 1]);
        sum.add(bins[l][j - 1], 1.0);
      }
      m.add_row(tag + "sum_" + idx(j), sum, Sense::Equal, 1.0);
      if (j < 3) continue;
      m.add_group(group);
      const int th = v.theta[j - 1];
      const int val = value[j - 1];
      for (int l = 0; l < kTrigSegments; ++l) {
        const TrigSegment& g = segs[l];
        const int b = bins[l][j - 1];
        const std::string base = tag + "_" + idx(l + 1) + "_" + idx(j);
        // theta >= lo - (lo + pi)(1 - b)
        if (g.lo + kPi > 0) {
          m.add_row(base + "_lo", AffineExpr{}.add(th, 1.0).add(b, -(g.lo + kPi)),
                    Sense::GreaterEqual, -kPi);
        }
        // theta <= hi + (pi - hi)(1 - b)
        if (kPi - g.hi > 0) {
          m.add_row(base + "_hi", AffineExpr{}.add(th, 1.0).add(b, kPi - g.hi), Sense::LessEqual,
                    kPi);
        }
        // value = slope theta + intercept when b = 1
        double lin_min = std::min(g.at(-kPi), g.at(kPi));
        double lin_max = std::max(g.at(-kPi), g.at(kPi));
        double m_up = 1.0 - lin_min;
        double m_dn = lin_max + 1.0;
        m.add_row(base + "_le",
                  AffineExpr{}.add(val, 1.0).add(th, -g.slope).add(b, m_up), Sense::LessEqual,
                  g.intercept + m_up);
        m.add_row(base + "_ge",
                  AffineExpr{}.add(val, 1.0).add(th, -g.slope).add(b, -m_dn),
                  Sense::GreaterEqual, g.intercept - m_dn);
      }
    }
  };
  family(t.sin, v.S, v.s, "sin");
  family(t.cos, v.C, v.c, "cos");
}

void add_theta_rate_limit(const FootstepVars& v, solver::Model& m) {
  for (int j = 3; j <= v.steps; ++j) {
    AffineExpr d;
    d.add(v.theta[j - 1], 1.0).add(v.theta[j - 2], -1.0);
    m.add_row("rate_up_" + idx(j), d, Sense::LessEqual, kPi / 8);
    m.add_row("rate_dn_" + idx(j), d, Sense::GreaterEqual, -kPi / 8);
  }
}

void add_contact_ordering(const Scenario& s, const FootstepVars& v, solver::Model& m) {
  if (!s.contact_ordering) return;
  constexpr double big = 1.0;
  for (int j = 1; j <= v.steps; ++j) {
    m.add_row("feet_" + idx(j), AffineExpr{}.add(v.LL[j - 1], 1.0).add(v.RL[j - 1], 1.0),
              Sense::Equal, 1.0);
  }
  for (int j = 3; j <= v.steps; ++j) {
    const int k = j - 1;
    // -M (1 - LL^{j-1}) + RL^j <= 1 and M (1 - LL^{j-1}) + RL^j >= 1
    m.add_row("order_l_up_" + idx(j), AffineExpr{}.add(v.LL[k - 1], big).add(v.RL[k], 1.0),
              Sense::LessEqual, 1.0 + big);
    m.add_row("order_l_dn_" + idx(j), AffineExpr{}.add(v.LL[k - 1], -big).add(v.RL[k], 1.0),
              Sense::GreaterEqual, 1.0 - big);
    // Mirrored pair: a right step is followed by a left step.
    m.add_row("order_r_up_" + idx(j), AffineExpr{}.add(v.RL[k - 1], big).add(v.LL[k], 1.0),
              Sense::LessEqual, 1.0 + big);
    m.add_row("order_r_dn_" + idx(j), AffineExpr{}.add(v.RL[k - 1], -big).add(v.LL[k], 1.0),
              Sense::GreaterEqual, 1.0 - big);
  }
}

void add_reachability(const Scenario& s, const FootstepVars& v, solver::Model& m,
                      const BuildOptions& options) {
  DiskWriter writer(v, m, options);
  const double inner = std::cos(kPi / options.polygon_sides);
  std::vector<int> stride_regions;
  for (const auto& name : s.reduced_stride_regions) stride_regions.push_back(s.region_index(name));

  for (int j = 3; j <= v.steps; ++j) {
    std::vector<Foot> feet;
    if (s.contact_ordering) {
      feet = {Foot::Left, Foot::Right};
    } else {
      feet = {s.foot_of(j)};
    }
    for (Foot foot : feet) {
      const Foot other = foot == Foot::Left ? Foot::Right : Foot::Left;
      const auto nominal = disks(s.reach.nominal, foot);
      const auto reduced = disks(s.reach.reduced, foot);
      const char* ftag = foot == Foot::Left ? "L" : "R";
      std::vector<Guard> foot_guard;
      if (s.contact_ordering) {
        const auto& bins = foot == Foot::Left ? v.LL : v.RL;
        // Slack when the other foot's disks hold instead.
        foot_guard.push_back({bins[j - 1], 0.0});
      }
      for (int i = 0; i < 2; ++i) {
        std::vector<Guard> guards = foot_guard;
        if (!guards.empty()) {
          guards[0].m = guard_m(nominal[i], disks(s.reach.nominal, other),
                                nominal[i].radius * inner);
        }
        writer.add(j, nominal[i], guards,
                   std::string("reach_") + ftag + idx(i + 1) + "_" + idx(j));
        for (int r : stride_regions) {
          std::vector<Guard> g2 = foot_guard;
          if (!g2.empty()) {
            g2[0].m = guard_m(reduced[i], disks(s.reach.nominal, other),
                              reduced[i].radius * inner);
          }
          g2.push_back({v.H[r][j - 1],
                        guard_m(reduced[i], nominal, reduced[i].radius * inner)});
          writer.add(j, reduced[i], g2,
                     std::string("stride_") + ftag + idx(i + 1) + "_" + idx(r + 1) + "_" + idx(j));
        }
      }
    }
  }
}

encoder::AtomBinding bind_atoms(const Scenario& s, const FootstepVars& v) {
  encoder::AtomBinding binding;
  for (const auto& [name, src] : atom_table(s)) {
    switch (src.kind) {
      case AtomSource::Region: {
        int r = s.region_index(src.region);
        if (r < 0) throw encoder::EncodeError("atom '" + name + "' names unknown region '" + src.region + "'");
        binding.bind(name, v.H[r]);
        break;
      }
      case AtomSource::LeftLeg:
      case AtomSource::RightLeg:
        // Foot atoms exist only when the foot binaries do.
        if (s.contact_ordering) binding.bind(name, src.kind == AtomSource::LeftLeg ? v.LL : v.RL);
        break;
    }
  }
  return binding;
}

FootstepProblem build_problem(const Scenario& s, const BuildOptions& options) {
  if (options.polygon_sides < 3) throw std::invalid_argument("polygon needs at least 3 sides");
  FootstepProblem p;
  p.vars = allocate_variables(s, p.model);
  build_objective(s, p.vars, p.model);
  add_region_assignment(s, p.vars, p.model);
  add_trig_approx(p.vars, p.model);
  add_theta_rate_limit(p.vars, p.model);
  add_contact_ordering(s, p.vars, p.model);
  add_reachability(s, p.vars, p.model, options);

  encoder::AtomBinding binding = bind_atoms(s, p.vars);
  encoder::EncodingContext ctx(s.num_steps);
  encoder::Encoder enc(p.model, binding, ctx);
  for (const auto& text : s.specs) {
    ltl::Formula f = ltl::parse(text);
    for (const auto& a : ltl::atoms(f)) {
      if (!binding.contains(a)) {
        if ((a == "p_lleg" || a == "p_rleg") && !s.contact_ordering) {
          throw encoder::EncodeError("atom '" + a + "' requires contact ordering to be enabled");
        }
        throw encoder::EncodeError("unbound atom '" + a + "' in specification '" + text + "'");
      }
    }
    enc.encode_satisfaction(f, 1);
    p.specs.push_back(std::move(f));
  }
  p.warnings = enc.warnings();
  p.ltl_aux_binaries = enc.aux_binaries();
  p.model.validate();
  return p;
}

}  // namespace ltlplan::model
