"""Direct evaluation of preference formulas over complete traces.

This is the reference semantics: BDF satisfaction over trace suffixes,
APF/GPF weights, and the preferred-plan ordering. The progression module is
required to agree with it exactly on every complete trace.

Finite-trace LTL conventions: at the last state index, next is false, always
reduces to the formula now, and until reduces to its goal now. Occurrence of
a primitive task is its operator event; occurrence of a nonprimitive task is
its start event; a method application is observed through its start event.
"""

from __future__ import annotations

from fractions import Fraction

from . import formulas as F
from .errors import UnboundVariable
from .model import OperatorEvent, StartEvent, State, Trace, args_match

Ordering = int  # -1: first preferred, 1: second preferred, 0: indistinguishable


def event_matches(event, ref: F.Ref) -> bool:
    if ref.kind == "op":
        return (isinstance(event, OperatorEvent) and event.name == ref.name
                and args_match(ref.args, event.args))
    if not isinstance(event, StartEvent):
        return False
    inst = event.inst
    return (inst.kind == ref.kind and inst.name == ref.name
            and args_match(ref.args, inst.args))


def terminated_at(state: State, ref: F.Ref) -> bool:
    return state.has_terminated(ref.kind, ref.name, ref.args)


def executing_at(state: State, ref: F.Ref) -> bool:
    # operator occurrences are never "executing"
    return ref.kind != "op" and state.has_executing(ref.kind, ref.name, ref.args)


def _before_witness(trace: Trace, start: int, t1: F.Ref, t2: F.Ref) -> bool:
    last = len(trace.events)
    for s1 in range(start, last + 1):
        st = trace.states[s1]
        if not (terminated_at(st, t1) and not executing_at(st, t2)
                and not terminated_at(st, t2)):
            continue
        for s2 in range(s1, last):
            if event_matches(trace.events[s2], t2):
                return True
    return False


def _between_witness(trace: Trace, start: int, t1: F.Ref, lit, t2: F.Ref) -> bool:
    last = len(trace.events)
    for s1 in range(start, last + 1):
        st = trace.states[s1]
        if not (terminated_at(st, t1) and not executing_at(st, t2)
                and not terminated_at(st, t2)):
            continue
        for s2 in range(s1, last):
            if event_matches(trace.events[s2], t2):
                if all(trace.states[i].holds(lit) for i in range(s1, s2 + 1)):
                    return True
    return False


def satisfies_bdf(trace: Trace, i: int, phi: F.BDF,
                  universe: tuple[str, ...] = ()) -> bool:
    """Truth of phi over the trace suffix starting at state index i."""
    last = len(trace.events)
    assert 0 <= i <= last

    if isinstance(phi, F.TrueC):
        return True
    if isinstance(phi, F.FalseC):
        return False
    if isinstance(phi, F.LitF):
        return trace.states[i].holds(phi.lit)
    if isinstance(phi, F.Final):
        return trace.final_state.holds(phi.lit)
    if isinstance(phi, F.Occ):
        return i < last and event_matches(trace.events[i], phi.ref)
    if isinstance(phi, F.Apply):
        return i < last and event_matches(trace.events[i], phi.ref)
    if isinstance(phi, F.Terminated):
        return terminated_at(trace.states[i], phi.ref)
    if isinstance(phi, F.Before):
        return _before_witness(trace, i, phi.t1, phi.t2)
    if isinstance(phi, F.HoldBefore):
        return any(trace.states[s1].holds(phi.lit)
                   and event_matches(trace.events[s1], phi.t)
                   for s1 in range(i, last))
    if isinstance(phi, F.HoldAfter):
        return any(terminated_at(trace.states[s1], phi.t)
                   and trace.states[s1].holds(phi.lit)
                   for s1 in range(i, last + 1))
    if isinstance(phi, F.HoldBetween):
        return _between_witness(trace, i, phi.t1, phi.lit, phi.t2)
    if isinstance(phi, F.Not):
        return not satisfies_bdf(trace, i, phi.sub, universe)
    if isinstance(phi, F.And):
        return all(satisfies_bdf(trace, i, p, universe) for p in phi.parts)
    if isinstance(phi, F.Or):
        return any(satisfies_bdf(trace, i, p, universe) for p in phi.parts)
    if isinstance(phi, F.Exists):
        return any(satisfies_bdf(trace, i, F.subst_bdf(phi.body, {phi.var: c}),
                                 universe)
                   for c in universe)
    if isinstance(phi, F.Forall):
        return all(satisfies_bdf(trace, i, F.subst_bdf(phi.body, {phi.var: c}),
                                 universe)
                   for c in universe)
    if isinstance(phi, F.Next):
        return i < last and satisfies_bdf(trace, i + 1, phi.sub, universe)
    if isinstance(phi, F.Always):
        return all(satisfies_bdf(trace, j, phi.sub, universe)
                   for j in range(i, last + 1))
    if isinstance(phi, F.Eventually):
        return any(satisfies_bdf(trace, j, phi.sub, universe)
                   for j in range(i, last + 1))
    if isinstance(phi, F.Until):
        for j in range(i, last + 1):
            if satisfies_bdf(trace, j, phi.goal, universe):
                return True
            if not satisfies_bdf(trace, j, phi.hold, universe):
                return False
        return False
    raise UnboundVariable(f"cannot evaluate {phi!r} directly")


def weight_bdf(trace: Trace, phi: F.BDF, universe: tuple[str, ...] = ()) -> Fraction:
    """0 when the BDF is satisfied from the initial state, else 1."""
    return F.W_MIN if satisfies_bdf(trace, 0, phi, universe) else F.W_MAX


def weight_apf(trace: Trace, apf: F.APF, universe: tuple[str, ...] = ()) -> Fraction:
    """The value of the first satisfied alternative; 1 when none holds."""
    for phi, value in apf.alts:
        if satisfies_bdf(trace, 0, phi, universe):
            return value
    return F.W_MAX


def weight_gpf(trace: Trace, gpf: F.GPF, universe: tuple[str, ...] = ()) -> Fraction:
    if isinstance(gpf, F.Atomic):
        return weight_apf(trace, gpf.apf, universe)
    if isinstance(gpf, F.Cond):
        if weight_bdf(trace, gpf.cond, universe) == F.W_MAX:
            return F.W_MIN  # condition unmet: trivially best
        return weight_gpf(trace, gpf.body, universe)
    if isinstance(gpf, F.Conj):
        return max(weight_gpf(trace, p, universe) for p in gpf.parts)
    if isinstance(gpf, F.Disj):
        return min(weight_gpf(trace, p, universe) for p in gpf.parts)
    raise TypeError(f"not a preference formula: {gpf!r}")


def weight_vector(trace: Trace, gpf: F.GPF,
                  universe: tuple[str, ...] = ()) -> tuple[Fraction, ...]:
    """Top-level constituent weights in document order (lexicographic tie-break)."""
    if isinstance(gpf, (F.Conj, F.Disj)):
        return tuple(weight_gpf(trace, p, universe) for p in gpf.parts)
    return (weight_gpf(trace, gpf, universe),)


def compare_plans(trace_a: Trace, trace_b: Trace, gpf: F.GPF,
                  universe: tuple[str, ...] = (), lex_tiebreak: bool = False) -> Ordering:
    """-1 when A is preferred, 1 when B is, 0 when indistinguishable."""
    wa = weight_gpf(trace_a, gpf, universe)
    wb = weight_gpf(trace_b, gpf, universe)
    if wa != wb:
        return -1 if wa < wb else 1
    if lex_tiebreak:
        va = weight_vector(trace_a, gpf, universe)
        vb = weight_vector(trace_b, gpf, universe)
        if va != vb:
            return -1 if va < vb else 1
    return 0
