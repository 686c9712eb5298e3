#include "ltlplan/solver/branch_and_bound.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>

#include "ltlplan/solver/propagate.hpp"

namespace ltlplan::solver {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::TimeLimitIncumbent:
      return "time_limit_incumbent";
    case SolveStatus::TimeLimitNoIncumbent:
      return "time_limit_no_incumbent";
  }
  return "unknown";
}

double relative_gap(double incumbent, double bound) {
  if (!std::isfinite(incumbent)) return kInf;
  if (!std::isfinite(bound)) return kInf;
  return std::max(0.0, incumbent - bound) / std::max(1.0, std::abs(incumbent));
}

namespace {

using Clock = std::chrono::steady_clock;

// Primal point in model space and duals keyed like ReducedQp::row_keys.
struct WarmData {
  std::vector<double> x;
  std::vector<double> y;
};

struct Node {
  long id = 0;
  double bound = -kInf;
  double parent_relaxation = -kInf;
  std::vector<std::pair<int, double>> fixes;
  std::shared_ptr<const WarmData> warm;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

struct Relaxed {
  RelaxStatus status = RelaxStatus::IterationLimit;
  std::vector<double> x;
  double objective = kInf;
  std::shared_ptr<const WarmData> warm;
};

struct Evaluation {
  enum Kind { Infeasible, Pruned, Closed, Branched } kind = Infeasible;
  double bound = -kInf;
  double relaxation = -kInf;  // raw relaxation value, -inf when unresolved
  std::vector<double> x;
  bool has_candidate = false;
  std::vector<double> candidate;
  double candidate_objective = kInf;
  std::vector<Node> children;
  long relaxations = 0;
  std::string warning;
};

class Search {
 public:
  Search(const Model& model, const BnbConfig& config)
      : model_(model), config_(config), propagator_(model) {
    for (const auto& v : model.variables()) {
      root_lo_.push_back(v.lower);
      root_hi_.push_back(v.upper);
    }
    for (int v = 0; v < model.num_variables(); ++v) {
      if (model.variable(v).kind == VarKind::Binary) binaries_.push_back(v);
    }
  }

  Evaluation evaluate(const Node& node, double cutoff) const {
    Evaluation ev;
    std::vector<double> lo = root_lo_;
    std::vector<double> hi = root_hi_;
    for (const auto& [v, val] : node.fixes) {
      if (val < lo[v] - 1e-9 || val > hi[v] + 1e-9) return ev;
      lo[v] = hi[v] = val;
    }
    if (!propagator_.run(lo, hi)) return ev;

    Relaxed r = relax(lo, hi, node.warm.get(), ev.relaxations);
    if (r.status == RelaxStatus::PrimalInfeasible) return ev;
    bool resolved = r.status == RelaxStatus::Solved;
    if (resolved) {
      ev.relaxation = r.objective;
      ev.bound = std::max(node.bound, r.objective);
    } else {
      ev.bound = node.bound;
      ev.warning = "relaxation unresolved at tighter settings; node kept at parent bound";
    }
    ev.x = r.x;
    if (ev.bound >= cutoff) {
      ev.kind = Evaluation::Pruned;
      return ev;
    }

    bool integral = true;
    for (int v : binaries_) {
      double f = std::abs(ev.x[v] - std::round(ev.x[v]));
      if (f > config_.integrality_tolerance) {
        integral = false;
        break;
      }
    }
    if (integral) {
      std::vector<double> clo = lo;
      std::vector<double> chi = hi;
      for (int v : binaries_) clo[v] = chi[v] = std::round(ev.x[v]);
      if (propagator_.run(clo, chi)) {
        Relaxed c = relax(clo, chi, r.warm.get(), ev.relaxations);
        if (c.status == RelaxStatus::Solved &&
            model_.max_violation(c.x) <= 1e-6) {
          ev.has_candidate = true;
          ev.candidate = std::move(c.x);
          ev.candidate_objective = model_.objective_value(ev.candidate);
        }
      }
      bool any_free = false;
      for (int v : binaries_) any_free = any_free || lo[v] < hi[v];
      // With every binary fixed the candidate solves the node problem itself.
      if (!any_free && ev.has_candidate) ev.bound = std::max(ev.bound, ev.candidate_objective);
      bool closes = ev.has_candidate &&
                    relative_gap(ev.candidate_objective, ev.bound) <= config_.gap;
      if (closes || !any_free) {
        ev.kind = ev.has_candidate ? Evaluation::Closed : Evaluation::Infeasible;
        return ev;
      }
    }

    ev.kind = Evaluation::Branched;
    ev.children = branch(node, ev, lo, hi, r.warm);
    return ev;
  }

  /// Depth-first plunge from the root following the preferred child.
  std::optional<std::pair<std::vector<double>, double>> dive(const Node& root,
                                                             long& relaxations,
                                                             double deadline_s,
                                                             Clock::time_point start) const {
    long budget = 4 * (static_cast<long>(model_.groups().size()) + 16);
    std::vector<std::vector<Node>> stack;
    Node cur = root;
    while (budget-- > 0) {
      if (std::chrono::duration<double>(Clock::now() - start).count() > deadline_s) break;
      Evaluation ev = evaluate(cur, kInf);
      relaxations += ev.relaxations;
      if (ev.has_candidate) return std::make_pair(ev.candidate, ev.candidate_objective);
      if (ev.kind == Evaluation::Branched && !ev.children.empty()) {
        std::vector<Node> rest(ev.children.begin() + 1, ev.children.end());
        std::reverse(rest.begin(), rest.end());
        stack.push_back(std::move(rest));
        cur = std::move(ev.children.front());
        continue;
      }
      while (!stack.empty() && stack.back().empty()) stack.pop_back();
      if (stack.empty()) break;
      cur = std::move(stack.back().back());
      stack.back().pop_back();
    }
    return std::nullopt;
  }

 private:
  Relaxed relax(const std::vector<double>& lo, const std::vector<double>& hi,
                const WarmData* warm, long& count) const {
    Relaxed out;
    ReducedQp red = reduce_model(model_, lo, hi);
    if (red.trivially_infeasible) {
      out.status = RelaxStatus::PrimalInfeasible;
      return out;
    }
    const int nv = model_.num_variables();
    if (red.free_vars.empty()) {
      out.status = RelaxStatus::Solved;
      out.x = red.fixed_values;
      out.objective = model_.objective_value(out.x);
      auto w = std::make_shared<WarmData>();
      w->x = out.x;
      w->y.assign(nv + model_.num_rows(), 0.0);
      out.warm = std::move(w);
      return out;
    }
    QpWarmStart ws;
    const QpWarmStart* wp = nullptr;
    if (warm != nullptr) {
      const int n = static_cast<int>(red.free_vars.size());
      const int m = static_cast<int>(red.row_keys.size());
      ws.x.resize(n);
      ws.y.resize(m);
      for (int k = 0; k < n; ++k) {
        ws.x[k] = std::clamp(warm->x[red.free_vars[k]], lo[red.free_vars[k]],
                             hi[red.free_vars[k]]);
      }
      for (int r = 0; r < m; ++r) ws.y[r] = warm->y[red.row_keys[r]];
      wp = &ws;
    }
    ++count;
    QpResult q = solve_qp(red.qp, config_.admm, wp);
    if (q.status == RelaxStatus::IterationLimit || q.status == RelaxStatus::DualInfeasible) {
      AdmmSettings tight = config_.admm;
      tight.max_iter *= 5;
      tight.eps_polish *= 0.01;
      tight.scaling_iterations = std::max(tight.scaling_iterations, 25);
      ++count;
      q = solve_qp(red.qp, tight, nullptr);
    }
    out.status = q.status == RelaxStatus::DualInfeasible ? RelaxStatus::IterationLimit
                                                         : q.status;
    out.x = expand_solution(red, q.x);
    out.objective = q.objective;
    auto w = std::make_shared<WarmData>();
    w->x = out.x;
    w->y.assign(nv + model_.num_rows(), 0.0);
    for (int r = 0; r < static_cast<int>(red.row_keys.size()); ++r) {
      w->y[red.row_keys[r]] = q.y[r];
    }
    out.warm = std::move(w);
    return out;
  }

  std::vector<Node> branch(const Node& node, const Evaluation& ev,
                           const std::vector<double>& lo,
                           const std::vector<double>& hi,
                           const std::shared_ptr<const WarmData>& warm) const {
    const auto& x = ev.x;
    auto frac = [&](int v) { return std::min(x[v], 1.0 - x[v]); };
    auto make_child = [&](std::vector<std::pair<int, double>> extra) {
      Node c;
      c.bound = ev.bound;
      c.parent_relaxation = ev.relaxation;
      c.fixes = node.fixes;
      c.fixes.insert(c.fixes.end(), extra.begin(), extra.end());
      c.warm = warm;
      return c;
    };

    // Group with the most fractional free member; ties keep the earliest.
    int best_group = -1;
    double best_score = config_.integrality_tolerance;
    int best_member = -1;
    const auto groups = model_.groups();
    for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
      for (int v : groups[g]) {
        if (lo[v] >= hi[v]) continue;
        double f = frac(v);
        if (f > best_score || (f == best_score && best_group >= 0 && v < best_member)) {
          best_score = f;
          best_group = g;
          best_member = v;
        }
      }
    }
    std::vector<Node> children;
    if (best_group >= 0) {
      std::vector<int> members;
      for (int v : groups[best_group]) {
        if (hi[v] > 0.5) members.push_back(v);
      }
      std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
        if (x[a] != x[b]) return x[a] > x[b];
        return a < b;
      });
      for (int m : members) {
        std::vector<std::pair<int, double>> extra;
        for (int v : groups[best_group]) extra.emplace_back(v, v == m ? 1.0 : 0.0);
        children.push_back(make_child(std::move(extra)));
      }
      return children;
    }

    int pick = -1;
    double pick_score = -1.0;
    for (int v : binaries_) {
      if (lo[v] >= hi[v]) continue;
      double f = frac(v);
      if (f > pick_score) {
        pick_score = f;
        pick = v;
      }
    }
    if (pick < 0) return children;
    double first = x[pick] >= 0.5 ? 1.0 : 0.0;
    children.push_back(make_child({{pick, first}}));
    children.push_back(make_child({{pick, 1.0 - first}}));
    return children;
  }

  const Model& model_;
  const BnbConfig& config_;
  Propagator propagator_;
  std::vector<double> root_lo_;
  std::vector<double> root_hi_;
  std::vector<int> binaries_;
};

}  // namespace

SolveResult branch_and_bound(const Model& model, const BnbConfig& config) {
  if (!model.quadratic_rows().empty()) {
    throw std::invalid_argument(
        "branch_and_bound: quadratic rows are not supported; use the "
        "polygonal norm realization");
  }
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  Search search(model, config);
  SolveResult result;
  double incumbent = kInf;
  std::vector<double> best;
  auto cutoff = [&] {
    if (!std::isfinite(incumbent)) return kInf;
    return incumbent - config.gap * std::max(1.0, std::abs(incumbent));
  };
  auto offer = [&](const std::vector<double>& x, double obj) {
    if (obj < incumbent) {
      incumbent = obj;
      best = x;
    }
  };
  auto note = [&](const std::string& w) {
    if (!w.empty() && std::find(result.warnings.begin(), result.warnings.end(), w) ==
                          result.warnings.end()) {
      result.warnings.push_back(w);
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  Node root;
  root.id = next_id++;

  Evaluation rev = search.evaluate(root, kInf);
  result.relaxations += rev.relaxations;
  result.nodes = 1;
  note(rev.warning);
  if (rev.has_candidate) offer(rev.candidate, rev.candidate_objective);
  // Smallest bound among discarded subtrees; bounds the optimum from below
  // together with the open nodes.
  double pruned_bound = kInf;
  if (rev.kind == Evaluation::Closed) pruned_bound = rev.bound;
  if (rev.kind == Evaluation::Branched) {
    if (config.dive && !std::isfinite(incumbent)) {
      long dive_relax = 0;
      auto found = search.dive(root, dive_relax, config.time_limit, start);
      result.relaxations += dive_relax;
      if (found) offer(found->first, found->second);
    }
    for (auto& c : rev.children) {
      c.id = next_id++;
      open.push(std::move(c));
    }
  }

  const int threads = std::max(1, config.threads);
  bool out_of_time = false;
  while (!open.empty()) {
    if (elapsed() > config.time_limit) {
      out_of_time = true;
      break;
    }
    if (result.nodes >= config.node_limit) {
      out_of_time = true;
      result.node_limit_hit = true;
      break;
    }
    const double cut = cutoff();
    std::vector<Node> batch;
    while (!open.empty() && static_cast<int>(batch.size()) < threads) {
      Node n = open.top();
      open.pop();
      if (n.bound >= cut) {
        pruned_bound = std::min(pruned_bound, n.bound);
        continue;
      }
      batch.push_back(std::move(n));
    }
    if (batch.empty()) continue;

    std::vector<Evaluation> evals(batch.size());
    const int nb = static_cast<int>(batch.size());
#pragma omp parallel for schedule(static, 1) num_threads(threads) if (nb > 1)
    for (int i = 0; i < nb; ++i) evals[i] = search.evaluate(batch[i], cut);

    for (int i = 0; i < nb; ++i) {
      auto& ev = evals[i];
      ++result.nodes;
      result.relaxations += ev.relaxations;
      note(ev.warning);
      if (std::isfinite(ev.relaxation) && std::isfinite(batch[i].parent_relaxation)) {
        result.worst_monotonicity =
            std::max(result.worst_monotonicity, batch[i].parent_relaxation - ev.relaxation);
      }
      if (ev.has_candidate) offer(ev.candidate, ev.candidate_objective);
      if (ev.kind == Evaluation::Pruned) pruned_bound = std::min(pruned_bound, ev.bound);
      if (ev.kind == Evaluation::Closed) pruned_bound = std::min(pruned_bound, ev.bound);
      if (ev.kind != Evaluation::Branched) continue;
      for (auto& c : ev.children) {
        c.id = next_id++;
        if (c.bound < cutoff()) {
          open.push(std::move(c));
        } else {
          pruned_bound = std::min(pruned_bound, c.bound);
        }
      }
    }
    if (config.progress && result.nodes % config.progress_interval < nb) {
      BnbProgress p;
      p.nodes = result.nodes;
      p.open = open.size();
      p.incumbent = incumbent;
      p.bound = open.empty() ? incumbent : std::min(open.top().bound, incumbent);
      p.seconds = elapsed();
      config.progress(p);
    }
  }

  result.wall_seconds = elapsed();
  if (std::isfinite(incumbent)) {
    result.x = best;
    result.objective = incumbent;
    double lb = std::min(incumbent, pruned_bound);
    if (!open.empty()) lb = std::min(lb, open.top().bound);
    result.bound = lb;
    result.gap = relative_gap(incumbent, lb);
    result.status = out_of_time && result.gap > config.gap ? SolveStatus::TimeLimitIncumbent
                                                           : SolveStatus::Optimal;
  } else {
    result.status = out_of_time ? SolveStatus::TimeLimitNoIncumbent : SolveStatus::Infeasible;
    result.bound = out_of_time && !open.empty() ? open.top().bound : kInf;
  }
  return result;
}

}  // namespace ltlplan::solver
