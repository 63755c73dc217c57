"""Brute-force baseline: enumerate every solution plan, score each one with
the direct trace semantics, and report the optimum.

Enumeration reuses the planner's expansion relation with the preference
bookkeeping switched off, so the two modes can only differ in search order.
Plan weights are computed after enumeration finishes and are excluded from
the reported elapsed time, which therefore measures pure plan generation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import formulas as F
from . import progression as P
from . import semantics
from .errors import CapExceeded, ResourceLimit
from .model import OperatorEvent, Problem, Trace
from .search import (SearchNode, SearchStats, SolveConfig, _Expander,
                     make_root, solve)


@dataclass(frozen=True)
class EnumerationCaps:
    max_plans: int = 100_000
    max_depth: int = 64
    max_seconds: float = 600.0

    def __post_init__(self):
        assert self.max_plans > 0 and self.max_depth > 0 \
            and self.max_seconds > 0


@dataclass
class OracleResult:
    plan_count: int
    best_plan: Optional[tuple[OperatorEvent, ...]]
    best_weight: Optional[Fraction]
    all_weights: tuple[Fraction, ...]  # multiset, in enumeration order
    stats: SearchStats
    traces: tuple[Trace, ...] = ()


def enumerate_all(problem: Problem, caps: EnumerationCaps = None,
                  keep_traces: bool = False) -> OracleResult:
    """Depth-first exhaustive enumeration of all solution plans.

    Deterministic: children come out in method declaration order, then
    grounding order. Raises CapExceeded (carrying the partial result) when a
    cap is hit.
    """
    caps = caps or EnumerationCaps()
    config = SolveConfig(depth_cap=caps.max_depth)
    stats = SearchStats()
    exp = _Expander(problem, config, stats)
    start = time.monotonic()

    traces: list[Trace] = []

    def record(node: SearchNode):
        if len(traces) >= caps.max_plans:
            raise CapExceeded("plans", _finish(partial=True))
        traces.append(node.trace)

    def _finish(partial: bool = False) -> OracleResult:
        stats.elapsed = time.monotonic() - start
        gpf = problem.preference if problem.preference is not None \
            else F.bdf_gpf(F.TRUE)
        universe = problem.constants
        weights = tuple(semantics.weight_gpf(t, gpf, universe)
                        for t in traces)
        best_i = None
        for i, w in enumerate(weights):
            if best_i is None or w < weights[best_i]:
                best_i = i
        best_plan = traces[best_i].plan() if best_i is not None else None
        best_w = weights[best_i] if best_i is not None else None
        if best_i is not None:
            stats.plan_length = len(best_plan)
        return OracleResult(len(traces), best_plan, best_w, weights, stats,
                            tuple(traces) if keep_traces else ())

    root, immediate = make_root(problem, config, with_preference=False)
    if immediate is not None:
        record(immediate)
        return _finish()

    stack: list[SearchNode] = [root]
    while stack:
        if time.monotonic() - start > caps.max_seconds:
            raise CapExceeded("time", _finish(partial=True))
        node = stack.pop()
        if node.weight is not None:
            record(node)
            continue
        try:
            children = exp.expand(node)
        except ResourceLimit as exc:
            raise CapExceeded(exc.kind, _finish(partial=True)) from exc
        stats.nodes_considered += len(children)
        stack.extend(reversed(children))
    return _finish()


@dataclass
class CheckReport:
    problem: str
    plan_count: int
    solve_weight: Optional[Fraction]
    oracle_weight: Optional[Fraction]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def cross_check(problem: Problem, caps: EnumerationCaps = None,
                config: SolveConfig = None) -> CheckReport:
    """Run the planner and the enumerator against each other.

    Asserted properties, one pass/fail entry each:
      * weight-match: the planner's returned weight equals the enumerated
        minimum (both report no plan on unsolvable problems);
      * progression-direct: for every enumerated plan, replaying it through
        progression yields exactly its direct-semantics weight;
      * prefix-monotone: along every plan's prefix chain, the optimistic
        bound never decreases, the pessimistic bound never increases, and
        both bracket the final weight;
      * bounds-converged: once the bounds meet on a prefix, they equal the
        final weight from then on.
    """
    caps = caps or EnumerationCaps()
    config = config or SolveConfig()
    oracle = enumerate_all(problem, caps, keep_traces=True)
    result = solve(problem, config)

    gpf = problem.preference if problem.preference is not None \
        else F.bdf_gpf(F.TRUE)
    universe = problem.constants

    report = CheckReport(problem.name, oracle.plan_count,
                         result.weight, oracle.best_weight)
    if oracle.plan_count == 0:
        report.checks["weight-match"] = result.status == "noplan"
        report.checks["progression-direct"] = True
        report.checks["prefix-monotone"] = True
        report.checks["bounds-converged"] = True
        return report

    report.checks["weight-match"] = (result.status == "ok"
                                     and result.weight == oracle.best_weight)

    prog_ok = mono_ok = conv_ok = True
    for trace in oracle.traces:
        direct = semantics.weight_gpf(trace, gpf, universe)
        final, prefix_bounds = P.progress_trace(
            gpf, trace, universe, paper_literal=config.paper_literal,
            simplify=config.simplify)
        if final != direct:
            prog_ok = False
        prev = None
        converged_at = None
        for b in prefix_bounds:
            if not (b.opt <= final <= b.pess):
                mono_ok = False
            if prev is not None and (b.opt < prev.opt or b.pess > prev.pess):
                mono_ok = False
            if converged_at is None and b.opt == b.pess:
                converged_at = b.opt
            if converged_at is not None and not (b.opt == b.pess == final):
                conv_ok = False
            prev = b
    report.checks["progression-direct"] = prog_ok
    report.checks["prefix-monotone"] = mono_ok
    report.checks["bounds-converged"] = conv_ok
    return report
