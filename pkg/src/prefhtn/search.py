"""Best-first preference planner over ordered task decomposition.

The frontier holds partial decompositions ordered by (optimistic weight,
pessimistic weight, plan length, insertion order). Expansion drills through
the front of the agenda — firing end events, splicing method bodies, checking
before-constraints — until a ground operator is applied; each reachable
operator yields one child. A node whose agenda empties carries its exact
weight, and the first such node popped is optimal (its optimistic weight is a
lower bound on everything still in the frontier).

The same expansion relation, with the preference bookkeeping switched off,
drives the brute-force enumerator; legality is defined in exactly one place.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import formulas as F
from . import progression as P
from .errors import PreconditionViolation, ResourceLimit, UnboundVariable
from .model import (EndEvent, Inst, Literal, OperatorEvent, Problem,
                    StartEvent, State, Subst, Task, Trace, Unordered,
                    empty_trace, is_ground, relevant_methods, subst_literal)


@dataclass(frozen=True)
class EndMarker:
    """Agenda placeholder that fires the end event of a started instance."""

    inst: Inst


@dataclass(frozen=True)
class Check:
    """Agenda placeholder for a method's before-constraint: the literal must
    hold in the state reached when the marker is drilled, or the branch dies."""

    lit: Literal


@dataclass
class SolveConfig:
    timeout: Optional[float] = None        # seconds, wall clock
    max_expansions: Optional[int] = None   # cap on applied operators
    depth_cap: int = 64                    # decomposition recursion depth
    tiebreak_lex: bool = False             # break weight ties lexicographically
    paper_literal: bool = False            # literal hold/before progression rule
    simplify: bool = True
    debug: bool = False                    # assert best-first dominance


@dataclass
class SearchStats:
    nodes_expanded: int = 0    # NE: applied operators
    nodes_considered: int = 0  # NC: frontier insertions
    elapsed: float = 0.0
    plan_length: Optional[int] = None


@dataclass
class SearchNode:
    agenda: tuple
    trace: Trace
    progressed: Optional[P.Progressed]
    opt: Fraction
    pess: Fraction
    weight: Optional[Fraction]  # set iff agenda holds no further events
    plan_length: int
    depth: int


@dataclass
class Result:
    status: str  # "ok" | "noplan"
    plan: Optional[tuple[OperatorEvent, ...]]
    weight: Optional[Fraction]
    stats: SearchStats
    trace: Optional[Trace] = None


def satisfiers(pre: tuple[Literal, ...], state: State, sigma: Subst):
    """All substitutions under which every precondition literal holds.

    Positive literals are matched against the state's facts (sorted, so the
    enumeration order is stable across runs); negative literals must be ground
    once the positives have bound everything, and are checked last.
    """
    positives = [l for l in pre if l.positive]
    negatives = [l for l in pre if not l.positive]
    facts = sorted(state.facts)

    def bind(i: int, sigma: Subst):
        if i == len(positives):
            for l in negatives:
                g = subst_literal(l, sigma)
                if not is_ground(g.atom.args):
                    raise UnboundVariable(
                        f"negative precondition {g} not grounded by positives")
                if not state.holds(g):
                    return
            yield sigma
            return
        lit = subst_literal(positives[i], sigma)
        for atom in facts:
            if atom.pred != lit.atom.pred or len(atom.args) != len(lit.atom.args):
                continue
            ext = dict(sigma)
            ok = True
            for p, a in zip(lit.atom.args, atom.args):
                if p.startswith("?"):
                    if ext.setdefault(p, a) != a:
                        ok = False
                        break
                elif p != a:
                    ok = False
                    break
            if ok:
                yield from bind(i + 1, ext)

    yield from bind(0, dict(sigma) if sigma else {})


def _emits(item) -> bool:
    """Whether the agenda item will ever produce a trace event."""
    if isinstance(item, Check):
        return False
    if isinstance(item, Unordered):
        return any(any(_emits(i) for i in mem) for mem in item.members)
    return True  # Task or EndMarker


def _any_emits(agenda) -> bool:
    return any(_emits(item) for item in agenda)


class _Expander:
    """Shared expansion relation. progressed=None disables all preference
    bookkeeping (brute-force mode): children then carry trivial bounds and
    terminal nodes carry weight None, to be evaluated after the fact."""

    def __init__(self, problem: Problem, config: SolveConfig,
                 stats: SearchStats):
        self.problem = problem
        self.domain = problem.domain
        self.config = config
        self.stats = stats

    def _step(self, pf, event, trace: Trace, terminal: bool):
        if pf is None:
            return None
        ctx = P.StepContext(event, trace.final_state, terminal,
                            paper_literal=self.config.paper_literal,
                            simplify=self.config.simplify,
                            prefix=trace if self.config.paper_literal else None)
        return P.step(pf, ctx)

    def _make_node(self, agenda, trace: Trace, pf, depth: int,
                   terminal: bool) -> SearchNode:
        plan_length = sum(1 for e in trace.events
                          if isinstance(e, OperatorEvent))
        if pf is None:
            w = Fraction(0) if terminal else None
            return SearchNode(agenda, trace, None, F.W_MIN, F.W_MAX, w,
                              plan_length, depth)
        if terminal:
            w = P.terminal_weight(pf)
            return SearchNode(agenda, trace, pf, w, w, w, plan_length, depth)
        b = P.bounds(pf, trace.final_state)
        return SearchNode(agenda, trace, pf, b.opt, b.pess, None,
                          plan_length, depth)

    def expand(self, node: SearchNode) -> list[SearchNode]:
        return self._drill(node.agenda, node.trace, node.progressed,
                           node.depth)

    def _drill(self, agenda, trace: Trace, pf, depth: int) -> list[SearchNode]:
        while True:
            head, rest = agenda[0], agenda[1:]

            if isinstance(head, Check):
                if not trace.final_state.holds(head.lit):
                    return []
                agenda = rest
                continue

            if isinstance(head, EndMarker):
                event = EndEvent(head.inst)
                trace = trace.extend(event, self.domain)
                terminal = not _any_emits(rest)
                pf = self._step(pf, event, trace, terminal)
                if terminal:
                    return [self._make_node(rest, trace, pf, depth, True)]
                agenda = rest
                continue

            if isinstance(head, Unordered):
                members = [m for m in head.members if m]
                if not members:
                    agenda = rest
                    continue
                out: list[SearchNode] = []
                for i, mem in enumerate(members):
                    others = tuple(members[:i] + members[i + 1:])
                    tail = (Unordered(others),) if others else ()
                    out.extend(self._drill(tuple(mem) + tail + rest,
                                           trace, pf, depth))
                return out

            task: Task = head
            if task.primitive:
                return self._apply_primitive(task, rest, trace, pf, depth)
            return self._decompose(task, rest, trace, pf, depth)

    def _apply_primitive(self, task: Task, rest, trace: Trace, pf,
                         depth: int) -> list[SearchNode]:
        op = self.domain.operators[task.name]
        event = OperatorEvent(task.name, task.args, len(trace.events))
        try:
            trace = trace.extend(event, self.domain)
        except PreconditionViolation:
            return []
        self.stats.nodes_expanded += 1
        cap = self.config.max_expansions
        if cap is not None and self.stats.nodes_expanded > cap:
            raise ResourceLimit("expansions", self.stats)
        terminal = not _any_emits(rest)
        pf = self._step(pf, event, trace, terminal)
        return [self._make_node(rest, trace, pf, depth, terminal)]

    def _decompose(self, task: Task, rest, trace: Trace, pf,
                   depth: int) -> list[SearchNode]:
        if depth + 1 > self.config.depth_cap:
            raise ResourceLimit("depth", self.stats)
        out: list[SearchNode] = []
        state = trace.final_state
        for method, sigma0 in relevant_methods(task, self.domain):
            for sigma in satisfiers(method.pre, state, sigma0):
                task_inst = Inst("task", task.name, task.args,
                                 len(trace.events))
                t1 = trace.extend(StartEvent(task_inst), self.domain)
                pf1 = self._step(pf, t1.events[-1], t1, False)
                method_inst = Inst("method", method.branch, task.args,
                                   len(t1.events))
                t2 = t1.extend(StartEvent(method_inst), self.domain)
                pf2 = self._step(pf1, t2.events[-1], t2, False)

                subtasks = [st.ground(sigma) for st in method.subtasks]
                if method.unordered:
                    items: list = [Unordered(tuple((st,) for st in subtasks))]
                else:
                    checks: dict[int, list] = {}
                    for lit, idx in method.before:
                        checks.setdefault(idx, []).append(
                            Check(subst_literal(lit, sigma)))
                    items = []
                    for i, st in enumerate(subtasks):
                        items.extend(checks.get(i, ()))
                        items.append(st)
                    items.extend(checks.get(len(subtasks), ()))

                agenda = (tuple(items)
                          + (EndMarker(method_inst), EndMarker(task_inst))
                          + rest)
                out.extend(self._drill(agenda, t2, pf2, depth + 1))
        return out


def _plan_key(node: SearchNode):
    return tuple((e.name,) + e.args for e in node.trace.plan())


def make_root(problem: Problem, config: SolveConfig,
              with_preference: bool = True
              ) -> tuple[Optional[SearchNode], Optional[SearchNode]]:
    """Build the root node; returns (root, immediate-solution). Exactly one
    of the pair is non-None: an empty task network is already a solution."""
    trace = empty_trace(problem.init)
    agenda = tuple(problem.network)
    universe = problem.constants
    terminal = not _any_emits(agenda)
    pf = None
    if with_preference:
        gpf = problem.preference if problem.preference is not None \
            else F.bdf_gpf(F.TRUE)
        pf = P.init_progressed(gpf, universe)
        ctx = P.StepContext(None, problem.init, terminal,
                            paper_literal=config.paper_literal,
                            simplify=config.simplify,
                            prefix=trace if config.paper_literal else None)
        pf = P.step(pf, ctx)
    if pf is None:
        node = SearchNode(agenda, trace, None, F.W_MIN, F.W_MAX,
                          Fraction(0) if terminal else None, 0, 0)
    elif terminal:
        w = P.terminal_weight(pf)
        node = SearchNode(agenda, trace, pf, w, w, w, 0, 0)
    else:
        b = P.bounds(pf, problem.init)
        node = SearchNode(agenda, trace, pf, b.opt, b.pess, None, 0, 0)
    if terminal:
        return None, node
    return node, None


def solve(problem: Problem, config: SolveConfig = None) -> Result:
    """Find a solution plan of minimum preference weight.

    Returns status "noplan" when the task network has no solution at all.
    Raises ResourceLimit when a configured cap (time, expansions, depth) is
    hit before an optimal node surfaces.
    """
    config = config or SolveConfig()
    stats = SearchStats()
    start = time.monotonic()
    exp = _Expander(problem, config, stats)

    def finish(node: Optional[SearchNode]) -> Result:
        stats.elapsed = time.monotonic() - start
        if node is None:
            return Result("noplan", None, None, stats)
        plan = node.trace.plan()
        stats.plan_length = len(plan)
        return Result("ok", plan, node.weight, stats, node.trace)

    root, immediate = make_root(problem, config)
    if immediate is not None:
        return finish(immediate)

    heap: list = []
    seq = itertools.count()
    heapq.heappush(heap, (root.opt, root.pess, root.plan_length,
                          next(seq), root))
    stats.nodes_considered += 1

    best: Optional[SearchNode] = None
    max_popped_opt = F.W_MIN
    while heap:
        if config.timeout is not None \
                and time.monotonic() - start > config.timeout:
            stats.elapsed = time.monotonic() - start
            raise ResourceLimit("time", stats)
        opt, _pess, _plen, _seq, node = heapq.heappop(heap)
        if best is not None and opt > best.weight:
            break
        max_popped_opt = max(max_popped_opt, opt)
        if node.weight is not None:
            if best is None:
                best = node
                if not config.tiebreak_lex:
                    break
            elif node.weight == best.weight \
                    and _plan_key(node) < _plan_key(best):
                best = node
            continue
        for child in exp.expand(node):
            heapq.heappush(heap, (child.opt, child.pess, child.plan_length,
                                  next(seq), child))
            stats.nodes_considered += 1

    if best is not None and config.debug:
        assert max_popped_opt <= best.weight
    return finish(best)
