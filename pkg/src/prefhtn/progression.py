"""Formula progression and the optimistic/pessimistic weight bounds.

A progressed preference mirrors the shape of its source formula, with every
BDF replaced by the residual still to be satisfied by the rest of the trace.
Progression runs once through the initial state (no event) and then once per
event; the step that produces a complete plan is flagged terminal, at which
point every residual collapses to a constant and the bounds coincide with
the true weight.

Residual conventions (all indices relative to the event sequence):

  * occ(X) hatches occNext(X) and eventually(terminated(X)); occNext is
    resolved against the next event.
  * before/hold* constructs hatch three-valued monitors; pending monitors
    count as satisfied under the optimistic bound and falsified under the
    pessimistic one. --paper-literal-hold instead resolves them immediately
    from the trace prefix, reproducing the source rule they refine.
  * final(l) stays open until the terminal step. Its pessimistic bound is
    "unsatisfied", not the current value of l: a fluent that is true now but
    deleted later would otherwise let the pessimistic weight increase along
    a prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

from . import formulas as F
from . import semantics
from .errors import UnboundVariable
from .model import State, Trace


@dataclass(frozen=True)
class PAtomic:
    values: tuple[Fraction, ...]
    residuals: tuple[F.BDF, ...]


@dataclass(frozen=True)
class PCond:
    cond: F.BDF
    body: "Progressed"


@dataclass(frozen=True)
class PConj:
    parts: tuple["Progressed", ...]


@dataclass(frozen=True)
class PDisj:
    parts: tuple["Progressed", ...]


Progressed = Union[PAtomic, PCond, PConj, PDisj]


@dataclass(frozen=True)
class Bounds:
    opt: Fraction
    pess: Fraction

    def __post_init__(self):
        assert self.opt <= self.pess


@dataclass(frozen=True)
class StepContext:
    """One progression step: the event just taken (None for the initial step),
    the state it produced, and whether the plan is complete after it."""

    event: object
    state: State
    terminal: bool
    paper_literal: bool = False
    simplify: bool = True
    prefix: Optional[Trace] = None  # only needed for paper-literal mode


def init_progressed(gpf: F.GPF, universe: tuple[str, ...]) -> Progressed:
    """Ground the quantifiers and lay out the progressed skeleton (no step yet)."""
    gpf = F.expand_gpf(gpf, universe)

    def build(g: F.GPF) -> Progressed:
        if isinstance(g, F.Atomic):
            return PAtomic(tuple(v for _, v in g.apf.alts),
                           tuple(b for b, _ in g.apf.alts))
        if isinstance(g, F.Cond):
            return PCond(g.cond, build(g.body))
        if isinstance(g, F.Conj):
            return PConj(tuple(build(p) for p in g.parts))
        if isinstance(g, F.Disj):
            return PDisj(tuple(build(p) for p in g.parts))
        raise TypeError(f"not a preference formula: {g!r}")

    return build(gpf)


# --- monitors ---------------------------------------------------------------------

def _cond1(state: State, t1: F.Ref, t2: F.Ref) -> bool:
    """The shared witness condition: t1 done, t2 not yet touched."""
    return (semantics.terminated_at(state, t1)
            and not semantics.executing_at(state, t2)
            and not semantics.terminated_at(state, t2))


def _resolve(value: bool, neg: bool) -> F.BDF:
    return F.const(value != neg)


def _hatch_monitor(phi: F.BDF, neg: bool, ctx: StepContext) -> F.BDF:
    """Create a monitor at the current index and give it its birth-state check."""
    if ctx.paper_literal:
        if ctx.prefix is None:
            raise UnboundVariable("paper-literal mode needs the trace prefix")
        sat = semantics.satisfies_bdf(ctx.prefix, 0, phi)
        return _resolve(sat, neg)

    if isinstance(phi, F.Before):
        mon = F.Mon("before", phi.t1, None, phi.t2, neg,
                    armed=_cond1(ctx.state, phi.t1, phi.t2))
        if ctx.terminal:
            return _resolve(False, neg)  # no event can still occur
        return mon
    if isinstance(phi, F.HoldBefore):
        if ctx.terminal:
            return _resolve(False, neg)
        return F.Mon("hold-before", phi.t, phi.lit, None, neg,
                     fprev=ctx.state.holds(phi.lit))
    if isinstance(phi, F.HoldAfter):
        sat_now = (semantics.terminated_at(ctx.state, phi.t)
                   and ctx.state.holds(phi.lit))
        if sat_now:
            return _resolve(True, neg)
        if ctx.terminal:
            return _resolve(False, neg)
        return F.Mon("hold-after", phi.t, phi.lit, None, neg)
    if isinstance(phi, F.HoldBetween):
        if ctx.terminal:
            return _resolve(False, neg)
        armed = _cond1(ctx.state, phi.t1, phi.t2) and ctx.state.holds(phi.lit)
        return F.Mon("hold-between", phi.t1, phi.lit, phi.t2, neg, armed=armed)
    raise TypeError(f"not a monitored construct: {phi!r}")


def _step_monitor(mon: F.Mon, ctx: StepContext) -> F.BDF:
    event, state = ctx.event, ctx.state

    if mon.construct == "before":
        if event is not None and semantics.event_matches(event, mon.t2):
            return _resolve(mon.armed, mon.neg)
        if ctx.terminal:
            return _resolve(False, mon.neg)
        return replace(mon, armed=mon.armed or _cond1(state, mon.t1, mon.t2))

    if mon.construct == "hold-before":
        if (event is not None and semantics.event_matches(event, mon.t1)
                and mon.fprev):
            return _resolve(True, mon.neg)
        if ctx.terminal:
            return _resolve(False, mon.neg)
        return replace(mon, fprev=state.holds(mon.lit))

    if mon.construct == "hold-after":
        if semantics.terminated_at(state, mon.t1) and state.holds(mon.lit):
            return _resolve(True, mon.neg)
        if ctx.terminal:
            return _resolve(False, mon.neg)
        return mon

    if mon.construct == "hold-between":
        if event is not None and semantics.event_matches(event, mon.t2):
            return _resolve(mon.armed, mon.neg)
        if ctx.terminal:
            return _resolve(False, mon.neg)
        armed = ((mon.armed or _cond1(state, mon.t1, mon.t2))
                 and state.holds(mon.lit))
        return replace(mon, armed=armed)

    raise TypeError(f"unknown monitor {mon.construct}")


# --- one progression step ----------------------------------------------------------

_MONITORED = (F.Before, F.HoldBefore, F.HoldAfter, F.HoldBetween)


def progress_bdf(phi: F.BDF, ctx: StepContext) -> F.BDF:
    """Progress one residual BDF through one step."""
    mk_and = F.mk_and if ctx.simplify else (lambda ps: F.And(tuple(ps)))
    mk_or = F.mk_or if ctx.simplify else (lambda ps: F.Or(tuple(ps)))

    if isinstance(phi, (F.TrueC, F.FalseC)):
        return phi
    if isinstance(phi, F.LitF):
        return F.const(ctx.state.holds(phi.lit))
    if isinstance(phi, F.Final):
        return F.const(ctx.state.holds(phi.lit)) if ctx.terminal else phi
    if isinstance(phi, F.Occ):
        if ctx.terminal:
            return F.FALSE
        if phi.ref.kind == "op":
            # an operator terminates at its own event; the termination
            # obligation is implied by the occurrence
            return F.OccNext(phi.ref)
        return mk_and([F.OccNext(phi.ref),
                       F.Eventually(F.Terminated(phi.ref))])
    if isinstance(phi, F.OccNext):
        return F.const(ctx.event is not None
                       and semantics.event_matches(ctx.event, phi.ref))
    if isinstance(phi, F.Apply):
        if ctx.terminal:
            return F.FALSE
        return mk_and([F.ApplyNext(phi.ref),
                       F.Eventually(F.Terminated(phi.ref))])
    if isinstance(phi, F.ApplyNext):
        return F.const(ctx.event is not None
                       and semantics.event_matches(ctx.event, phi.ref))
    if isinstance(phi, F.Terminated):
        return F.const(semantics.terminated_at(ctx.state, phi.ref))
    if isinstance(phi, F.Last):
        return F.TRUE if ctx.terminal else F.WasLast()
    if isinstance(phi, F.WasLast):
        # another step happened, so the previous index was not the last one
        return F.FALSE
    if isinstance(phi, F.Mon):
        return _step_monitor(phi, ctx)
    if isinstance(phi, _MONITORED):
        return _hatch_monitor(phi, False, ctx)
    if isinstance(phi, F.Not):
        sub = phi.sub
        if isinstance(sub, _MONITORED):
            return _hatch_monitor(sub, True, ctx)
        inner = progress_bdf(sub, ctx)
        if isinstance(inner, F.TrueC):
            return F.FALSE
        if isinstance(inner, F.FalseC):
            return F.TRUE
        return F.Not(inner)
    if isinstance(phi, F.And):
        return mk_and([progress_bdf(p, ctx) for p in phi.parts])
    if isinstance(phi, F.Or):
        return mk_or([progress_bdf(p, ctx) for p in phi.parts])
    if isinstance(phi, F.Next):
        return F.FALSE if ctx.terminal else phi.sub
    if isinstance(phi, F.Always):
        now = progress_bdf(phi.sub, ctx)
        return now if ctx.terminal else mk_and([now, phi])
    if isinstance(phi, F.Eventually):
        now = progress_bdf(phi.sub, ctx)
        return now if ctx.terminal else mk_or([now, phi])
    if isinstance(phi, F.Until):
        goal_now = progress_bdf(phi.goal, ctx)
        if ctx.terminal:
            return goal_now
        hold_now = progress_bdf(phi.hold, ctx)
        return mk_or([goal_now, mk_and([hold_now, phi])])
    if isinstance(phi, (F.Exists, F.Forall)):
        raise UnboundVariable("quantifiers must be grounded before progression")
    raise TypeError(f"cannot progress {phi!r}")


def step(pf: Progressed, ctx: StepContext) -> Progressed:
    if isinstance(pf, PAtomic):
        return PAtomic(pf.values,
                       tuple(progress_bdf(r, ctx) for r in pf.residuals))
    if isinstance(pf, PCond):
        return PCond(progress_bdf(pf.cond, ctx), step(pf.body, ctx))
    if isinstance(pf, PConj):
        return PConj(tuple(step(p, ctx) for p in pf.parts))
    return PDisj(tuple(step(p, ctx) for p in pf.parts))


# --- bounds ------------------------------------------------------------------------

def _sat_bounds(phi: F.BDF, state: State) -> tuple[bool, bool]:
    """(optimistically satisfied, pessimistically satisfied) for one residual."""
    if isinstance(phi, F.TrueC):
        return True, True
    if isinstance(phi, F.FalseC):
        return False, False
    if isinstance(phi, F.And):
        opt = pess = True
        for p in phi.parts:
            o, s = _sat_bounds(p, state)
            opt = opt and o
            pess = pess and s
        return opt, pess
    if isinstance(phi, F.Or):
        opt = pess = False
        for p in phi.parts:
            o, s = _sat_bounds(p, state)
            opt = opt or o
            pess = pess or s
        return opt, pess
    if isinstance(phi, F.Not):
        o, s = _sat_bounds(phi.sub, state)
        return (not s), (not o)
    if isinstance(phi, F.Terminated):
        # termination is monotone, so current membership is a safe lower bound
        done = semantics.terminated_at(state, phi.ref)
        return True, done
    # every other residual is a pending obligation: optimistically it will be
    # met, pessimistically it never is
    return True, False


def bounds(pf: Progressed, state: State) -> Bounds:
    if isinstance(pf, PAtomic):
        opt = pess = F.W_MAX
        for value, residual in zip(pf.values, pf.residuals):
            o, s = _sat_bounds(residual, state)
            if o:
                opt = min(opt, value)
            if s:
                pess = min(pess, value)
        return Bounds(opt, pess)
    if isinstance(pf, PCond):
        opt_c, pess_c = _sat_bounds(pf.cond, state)
        inner = bounds(pf.body, state)
        opt = inner.opt if pess_c else F.W_MIN
        pess = inner.pess if opt_c else F.W_MIN
        return Bounds(opt, pess)
    if isinstance(pf, PConj):
        parts = [bounds(p, state) for p in pf.parts]
        return Bounds(max(b.opt for b in parts), max(b.pess for b in parts))
    parts = [bounds(p, state) for p in pf.parts]
    return Bounds(min(b.opt for b in parts), min(b.pess for b in parts))


def _eval_const(phi: F.BDF) -> bool:
    """Evaluate a residual that only contains constants (connectives allowed,
    since simplification may be off)."""
    if isinstance(phi, F.TrueC):
        return True
    if isinstance(phi, F.FalseC):
        return False
    if isinstance(phi, F.Not):
        return not _eval_const(phi.sub)
    if isinstance(phi, F.And):
        return all(_eval_const(p) for p in phi.parts)
    if isinstance(phi, F.Or):
        return any(_eval_const(p) for p in phi.parts)
    raise ValueError(f"unresolved residual at terminal: {phi!r}")


def terminal_weight(pf: Progressed) -> Fraction:
    """Exact weight of a fully progressed (terminal) formula."""
    if isinstance(pf, PAtomic):
        for value, residual in zip(pf.values, pf.residuals):
            if _eval_const(residual):
                return value
        return F.W_MAX
    if isinstance(pf, PCond):
        if not _eval_const(pf.cond):
            return F.W_MIN
        return terminal_weight(pf.body)
    if isinstance(pf, PConj):
        return max(terminal_weight(p) for p in pf.parts)
    return min(terminal_weight(p) for p in pf.parts)


# --- whole-trace replay --------------------------------------------------------------

def progress_trace(gpf: F.GPF, trace: Trace, universe: tuple[str, ...],
                   paper_literal: bool = False, simplify: bool = True
                   ) -> tuple[Fraction, list[Bounds]]:
    """Replay a complete trace through progression.

    Returns the terminal weight and the bounds after every step (the entry
    for the final step collapses to the exact weight).
    """
    pf = init_progressed(gpf, universe)
    n = len(trace.events)
    prefix_bounds: list[Bounds] = []
    for i in range(n + 1):
        event = trace.events[i - 1] if i > 0 else None
        state = trace.states[i]
        terminal = i == n
        prefix = Trace(trace.events[:i], trace.states[:i + 1]) if paper_literal else None
        pf = step(pf, StepContext(event, state, terminal,
                                  paper_literal=paper_literal,
                                  simplify=simplify, prefix=prefix))
        if terminal:
            w = terminal_weight(pf)
            prefix_bounds.append(Bounds(w, w))
        else:
            prefix_bounds.append(bounds(pf, state))
    return terminal_weight(pf), prefix_bounds
