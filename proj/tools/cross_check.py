#!/usr/bin/env python3
"""Solve an exported LP file with SCIP and compare against ltlplan.

    cross_check.py SCENARIO.json EXPORT.lp PLAN.json [--out SCIP.plan.json]

Reports SCIP's status and objective next to the plan's objective and fails
unless the two agree within 1e-4 relative. With --out, SCIP's solution is
written as a plan file that `ltlplan plan SCENARIO --verify-only` accepts.
"""

import argparse
import json
import sys

from pyscipopt import Model


def foot_of(scenario, step):
    first = scenario.get("modes", {}).get("first_foot", "right")
    odd = step % 2 == 1
    if first == "right":
        return "R" if odd else "L"
    return "L" if odd else "R"


def solution_plan(scenario, plan, values):
    n = scenario["num_steps"]
    regions = [r["name"] for r in scenario["regions"]]
    contact = scenario.get("modes", {}).get("contact_ordering", False)
    steps = []
    for j in range(1, n + 1):
        h = [values.get(f"H_{r + 1}_{j}", 0.0) for r in range(len(regions))]
        if contact:
            foot = "L" if values.get(f"LL_{j}", 0.0) > 0.5 else "R"
        else:
            foot = foot_of(scenario, j)
        steps.append({
            "index": j,
            "foot": foot,
            "x": values[f"x_{j}"],
            "y": values[f"y_{j}"],
            "theta": values[f"th_{j}"],
            "s": values[f"s_{j}"],
            "c": values[f"c_{j}"],
            "region": regions[max(range(len(h)), key=lambda r: h[r])],
        })
    return {
        "schema": "footstep-plan/1",
        "scenario": plan.get("scenario", ""),
        "status": "optimal",
        "objective": values["__objective__"],
        "reachability": plan["reachability"],
        "steps": steps,
        "specs": plan.get("specs", []),
        "solver": {"nodes": 0, "relaxations": 0, "bound": None, "gap": None, "node_limit_hit": False},
        "warnings": [],
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("scenario")
    ap.add_argument("lp")
    ap.add_argument("plan")
    ap.add_argument("--out")
    ap.add_argument("--time-limit", type=float, default=600.0)
    args = ap.parse_args()

    with open(args.scenario) as f:
        scenario = json.load(f)
    with open(args.plan) as f:
        plan = json.load(f)

    m = Model()
    m.hideOutput()
    m.readProblem(args.lp)
    m.setParam("limits/time", args.time_limit)
    m.setParam("limits/gap", 1e-9)
    m.setParam("numerics/feastol", 1e-9)
    m.optimize()
    status = m.getStatus()
    ours = plan["objective"]
    if status != "optimal":
        dual = m.getDualbound()
        primal = m.getPrimalbound() if m.getNSols() > 0 else float("inf")
        tol = 1e-4 * max(1.0, abs(ours))
        consistent = dual <= ours + tol and ours <= primal + tol
        print(f"SCIP status {status} dual bound {dual:.10g} primal {primal:.10g}; "
              f"ltlplan {ours:.10g} {'inside' if consistent else 'OUTSIDE'} the bracket")
        return 2 if consistent else 1
    obj = m.getObjVal()
    rel = abs(obj - ours) / max(1.0, abs(ours))
    print(f"SCIP status {status} objective {obj:.10g}; ltlplan {ours:.10g}; relative difference {rel:.3g}")

    if args.out:
        values = {v.name: m.getVal(v) for v in m.getVars()}
        values["__objective__"] = obj
        with open(args.out, "w") as f:
            json.dump(solution_plan(scenario, plan, values), f, indent=2)
            f.write("\n")
    return 0 if rel <= 1e-4 else 1


if __name__ == "__main__":
    sys.exit(main())
