"""Preference formula ASTs.

Three layers: basic desire formulas (finite-trace LTL plus occurrence,
decomposition and before/hold constructs), atomic preference formulas
(ordered alternatives with increasing weight values) and general preference
formulas (conditional / conjunctive / disjunctive aggregation).

Weights are exact rationals in [0, 1]; 0 is best, 1 is worst. Negation is
pushed to atoms at construction time (nnf); the extended constructs TrueC,
FalseC, OccNext, ApplyNext, Terminated, Last and Mon only ever appear as
progression outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BadValueOrder, UnboundVariable
from .model import Literal, is_var

Weight = Fraction
W_MIN = Fraction(0)
W_MAX = Fraction(1)


@dataclass(frozen=True)
class Ref:
    """An occurrence target: an operator, a nonprimitive task, or a method branch."""

    kind: str  # "op" | "task" | "method"
    name: str
    args: tuple[str, ...] = ()


# --- BDF nodes ---------------------------------------------------------------

@dataclass(frozen=True)
class TrueC:
    pass


@dataclass(frozen=True)
class FalseC:
    pass


TRUE = TrueC()
FALSE = FalseC()


@dataclass(frozen=True)
class LitF:
    lit: Literal


@dataclass(frozen=True)
class Final:
    lit: Literal


@dataclass(frozen=True)
class Occ:
    ref: Ref


@dataclass(frozen=True)
class Apply:
    ref: Ref  # kind == "method"


@dataclass(frozen=True)
class Before:
    t1: Ref
    t2: Ref


@dataclass(frozen=True)
class HoldBefore:
    t: Ref
    lit: Literal


@dataclass(frozen=True)
class HoldAfter:
    t: Ref
    lit: Literal


@dataclass(frozen=True)
class HoldBetween:
    t1: Ref
    lit: Literal
    t2: Ref


@dataclass(frozen=True)
class Not:
    sub: "BDF"


@dataclass(frozen=True)
class And:
    parts: tuple["BDF", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["BDF", ...]


@dataclass(frozen=True)
class Exists:
    var: str
    body: "BDF"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "BDF"


@dataclass(frozen=True)
class Next:
    sub: "BDF"


@dataclass(frozen=True)
class Always:
    sub: "BDF"


@dataclass(frozen=True)
class Eventually:
    sub: "BDF"


@dataclass(frozen=True)
class Until:
    hold: "BDF"
    goal: "BDF"


# --- progression-only nodes ---------------------------------------------------

@dataclass(frozen=True)
class OccNext:
    ref: Ref


@dataclass(frozen=True)
class ApplyNext:
    ref: Ref


@dataclass(frozen=True)
class Terminated:
    ref: Ref


@dataclass(frozen=True)
class Last:
    """True exactly at the final trace index (arises from nnf of Not(Next ...))."""


@dataclass(frozen=True)
class WasLast:
    """Residual of Last: the index just progressed through was the final one."""


@dataclass(frozen=True)
class Mon:
    """Three-valued monitor for a pending before/hold* construct.

    construct is "before", "hold-before", "hold-after" or "hold-between";
    armed/fprev are the bookkeeping bits of the stepping rules. Resolution
    replaces the node with TrueC/FalseC (flipped when neg is set).
    """

    construct: str
    t1: Ref
    lit: Literal = None
    t2: Ref = None
    neg: bool = False
    armed: bool = False
    fprev: bool = False


BDF = Union[TrueC, FalseC, LitF, Final, Occ, Apply, Before, HoldBefore,
            HoldAfter, HoldBetween, Not, And, Or, Exists, Forall, Next,
            Always, Eventually, Until, OccNext, ApplyNext, Terminated,
            Last, WasLast, Mon]


# --- APF / GPF ----------------------------------------------------------------

@dataclass(frozen=True)
class APF:
    """Ordered alternatives (bdf, value); values strictly increase from 0."""

    alts: tuple[tuple[BDF, Fraction], ...]

    def __post_init__(self):
        check_apf_values([v for _, v in self.alts])


def check_apf_values(values) -> None:
    if not values:
        raise BadValueOrder("atomic preference needs at least one alternative")
    if values[0] != W_MIN:
        raise BadValueOrder(f"first alternative value must be 0, got {values[0]}")
    for a, b in zip(values, values[1:]):
        if not a < b:
            raise BadValueOrder(f"alternative values must strictly increase: {a} !< {b}")
    if values[-1] > W_MAX:
        raise BadValueOrder(f"alternative value {values[-1]} exceeds 1")


@dataclass(frozen=True)
class Atomic:
    apf: APF


@dataclass(frozen=True)
class Cond:
    cond: BDF
    body: "GPF"


@dataclass(frozen=True)
class Conj:
    parts: tuple["GPF", ...]


@dataclass(frozen=True)
class Disj:
    parts: tuple["GPF", ...]


GPF = Union[Atomic, Cond, Conj, Disj]


def bdf_gpf(phi: BDF) -> GPF:
    """An APF with a single 0-valued alternative: a bare BDF as a GPF."""
    return Atomic(APF(((phi, W_MIN),)))


# --- smart constructors ---------------------------------------------------------

def mk_and(parts) -> BDF:
    flat: list[BDF] = []
    for p in parts:
        if isinstance(p, FalseC):
            return FALSE
        if isinstance(p, TrueC):
            continue
        if isinstance(p, And):
            flat.extend(q for q in p.parts if q not in flat)
        elif p not in flat:
            flat.append(p)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def mk_or(parts) -> BDF:
    flat: list[BDF] = []
    for p in parts:
        if isinstance(p, TrueC):
            return TRUE
        if isinstance(p, FalseC):
            continue
        if isinstance(p, Or):
            flat.extend(q for q in p.parts if q not in flat)
        elif p not in flat:
            flat.append(p)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def const(b: bool) -> BDF:
    return TRUE if b else FALSE


# --- negation normal form -------------------------------------------------------

_ATOMIC_NEGATABLE = (LitF, Occ, Apply, Terminated, Before, HoldBefore,
                     HoldAfter, HoldBetween, OccNext, ApplyNext, Mon,
                     Last, WasLast)


def nnf(phi: BDF) -> BDF:
    """Push negation down to atoms. Next is strong: not(next p) = last or next(not p)."""
    if isinstance(phi, Not):
        return _nnf_neg(phi.sub)
    if isinstance(phi, And):
        return And(tuple(nnf(p) for p in phi.parts))
    if isinstance(phi, Or):
        return Or(tuple(nnf(p) for p in phi.parts))
    if isinstance(phi, Exists):
        return Exists(phi.var, nnf(phi.body))
    if isinstance(phi, Forall):
        return Forall(phi.var, nnf(phi.body))
    if isinstance(phi, Next):
        return Next(nnf(phi.sub))
    if isinstance(phi, Always):
        return Always(nnf(phi.sub))
    if isinstance(phi, Eventually):
        return Eventually(nnf(phi.sub))
    if isinstance(phi, Until):
        return Until(nnf(phi.hold), nnf(phi.goal))
    return phi


def _nnf_neg(phi: BDF) -> BDF:
    if isinstance(phi, TrueC):
        return FALSE
    if isinstance(phi, FalseC):
        return TRUE
    if isinstance(phi, LitF):
        return LitF(phi.lit.negate())
    if isinstance(phi, Final):
        return Final(phi.lit.negate())
    if isinstance(phi, Not):
        return nnf(phi.sub)
    if isinstance(phi, And):
        return Or(tuple(_nnf_neg(p) for p in phi.parts))
    if isinstance(phi, Or):
        return And(tuple(_nnf_neg(p) for p in phi.parts))
    if isinstance(phi, Exists):
        return Forall(phi.var, _nnf_neg(phi.body))
    if isinstance(phi, Forall):
        return Exists(phi.var, _nnf_neg(phi.body))
    if isinstance(phi, Next):
        return Or((Last(), Next(_nnf_neg(phi.sub))))
    if isinstance(phi, Always):
        return Eventually(_nnf_neg(phi.sub))
    if isinstance(phi, Eventually):
        return Always(_nnf_neg(phi.sub))
    if isinstance(phi, Until):
        # not (p U q) = always(not q) or (not q) U (not p and not q)
        np, nq = _nnf_neg(phi.hold), _nnf_neg(phi.goal)
        return Or((Always(nq), Until(nq, And((np, nq)))))
    if isinstance(phi, _ATOMIC_NEGATABLE):
        return Not(phi)
    raise UnboundVariable(f"cannot negate {phi!r}")


def nnf_gpf(gpf: GPF) -> GPF:
    if isinstance(gpf, Atomic):
        return Atomic(APF(tuple((nnf(b), v) for b, v in gpf.apf.alts)))
    if isinstance(gpf, Cond):
        return Cond(nnf(gpf.cond), nnf_gpf(gpf.body))
    if isinstance(gpf, Conj):
        return Conj(tuple(nnf_gpf(p) for p in gpf.parts))
    return Disj(tuple(nnf_gpf(p) for p in gpf.parts))


# --- substitution and quantifier expansion ---------------------------------------

def _subst_ref(ref: Ref, sigma: dict[str, str]) -> Ref:
    if ref is None:
        return None
    return Ref(ref.kind, ref.name, tuple(sigma.get(a, a) for a in ref.args))


def subst_bdf(phi: BDF, sigma: dict[str, str]) -> BDF:
    from .model import subst_literal
    if isinstance(phi, (TrueC, FalseC, Last, WasLast)):
        return phi
    if isinstance(phi, LitF):
        return LitF(subst_literal(phi.lit, sigma))
    if isinstance(phi, Final):
        return Final(subst_literal(phi.lit, sigma))
    if isinstance(phi, Occ):
        return Occ(_subst_ref(phi.ref, sigma))
    if isinstance(phi, Apply):
        return Apply(_subst_ref(phi.ref, sigma))
    if isinstance(phi, Before):
        return Before(_subst_ref(phi.t1, sigma), _subst_ref(phi.t2, sigma))
    if isinstance(phi, HoldBefore):
        return HoldBefore(_subst_ref(phi.t, sigma), subst_literal(phi.lit, sigma))
    if isinstance(phi, HoldAfter):
        return HoldAfter(_subst_ref(phi.t, sigma), subst_literal(phi.lit, sigma))
    if isinstance(phi, HoldBetween):
        return HoldBetween(_subst_ref(phi.t1, sigma), subst_literal(phi.lit, sigma),
                           _subst_ref(phi.t2, sigma))
    if isinstance(phi, Not):
        return Not(subst_bdf(phi.sub, sigma))
    if isinstance(phi, And):
        return And(tuple(subst_bdf(p, sigma) for p in phi.parts))
    if isinstance(phi, Or):
        return Or(tuple(subst_bdf(p, sigma) for p in phi.parts))
    if isinstance(phi, Exists):
        inner = {k: v for k, v in sigma.items() if k != phi.var}
        return Exists(phi.var, subst_bdf(phi.body, inner))
    if isinstance(phi, Forall):
        inner = {k: v for k, v in sigma.items() if k != phi.var}
        return Forall(phi.var, subst_bdf(phi.body, inner))
    if isinstance(phi, Next):
        return Next(subst_bdf(phi.sub, sigma))
    if isinstance(phi, Always):
        return Always(subst_bdf(phi.sub, sigma))
    if isinstance(phi, Eventually):
        return Eventually(subst_bdf(phi.sub, sigma))
    if isinstance(phi, Until):
        return Until(subst_bdf(phi.hold, sigma), subst_bdf(phi.goal, sigma))
    if isinstance(phi, OccNext):
        return OccNext(_subst_ref(phi.ref, sigma))
    if isinstance(phi, ApplyNext):
        return ApplyNext(_subst_ref(phi.ref, sigma))
    if isinstance(phi, Terminated):
        return Terminated(_subst_ref(phi.ref, sigma))
    raise UnboundVariable(f"cannot substitute into {phi!r}")


def expand_quantifiers(phi: BDF, universe: tuple[str, ...]) -> BDF:
    """Ground exists as a disjunction and forall as a conjunction over the universe."""
    if isinstance(phi, Exists):
        body = expand_quantifiers(phi.body, universe)
        return mk_or(expand_quantifiers(subst_bdf(body, {phi.var: c}), universe)
                     for c in universe)
    if isinstance(phi, Forall):
        body = expand_quantifiers(phi.body, universe)
        return mk_and(expand_quantifiers(subst_bdf(body, {phi.var: c}), universe)
                      for c in universe)
    if isinstance(phi, Not):
        return Not(expand_quantifiers(phi.sub, universe))
    if isinstance(phi, And):
        return mk_and(expand_quantifiers(p, universe) for p in phi.parts)
    if isinstance(phi, Or):
        return mk_or(expand_quantifiers(p, universe) for p in phi.parts)
    if isinstance(phi, Next):
        return Next(expand_quantifiers(phi.sub, universe))
    if isinstance(phi, Always):
        return Always(expand_quantifiers(phi.sub, universe))
    if isinstance(phi, Eventually):
        return Eventually(expand_quantifiers(phi.sub, universe))
    if isinstance(phi, Until):
        return Until(expand_quantifiers(phi.hold, universe),
                     expand_quantifiers(phi.goal, universe))
    return phi


def expand_gpf(gpf: GPF, universe: tuple[str, ...]) -> GPF:
    if isinstance(gpf, Atomic):
        return Atomic(APF(tuple((expand_quantifiers(b, universe), v)
                                for b, v in gpf.apf.alts)))
    if isinstance(gpf, Cond):
        return Cond(expand_quantifiers(gpf.cond, universe), expand_gpf(gpf.body, universe))
    if isinstance(gpf, Conj):
        return Conj(tuple(expand_gpf(p, universe) for p in gpf.parts))
    return Disj(tuple(expand_gpf(p, universe) for p in gpf.parts))


def check_closed(phi: BDF, bound: frozenset = frozenset()) -> None:
    """Raise UnboundVariable if a free variable occurs outside its quantifier."""
    def check_args(args):
        for a in args:
            if is_var(a) and a not in bound:
                raise UnboundVariable(f"unbound variable {a}")

    if isinstance(phi, (LitF, Final)):
        check_args(phi.lit.atom.args)
    elif isinstance(phi, (Occ, Apply, OccNext, ApplyNext, Terminated)):
        check_args(phi.ref.args)
    elif isinstance(phi, Before):
        check_args(phi.t1.args)
        check_args(phi.t2.args)
    elif isinstance(phi, (HoldBefore, HoldAfter)):
        check_args(phi.t.args)
        check_args(phi.lit.atom.args)
    elif isinstance(phi, HoldBetween):
        check_args(phi.t1.args)
        check_args(phi.lit.atom.args)
        check_args(phi.t2.args)
    elif isinstance(phi, (Not, Next, Always, Eventually)):
        check_closed(phi.sub, bound)
    elif isinstance(phi, (And, Or)):
        for p in phi.parts:
            check_closed(p, bound)
    elif isinstance(phi, Until):
        check_closed(phi.hold, bound)
        check_closed(phi.goal, bound)
    elif isinstance(phi, (Exists, Forall)):
        check_closed(phi.body, bound | {phi.var})


def formula_constants(gpf: GPF) -> set[str]:
    out: set[str] = set()

    def walk_bdf(phi: BDF):
        if isinstance(phi, (LitF, Final)):
            out.update(a for a in phi.lit.atom.args if not is_var(a))
        elif isinstance(phi, (Occ, Apply, OccNext, ApplyNext, Terminated)):
            out.update(a for a in phi.ref.args if not is_var(a))
        elif isinstance(phi, Before):
            out.update(a for a in phi.t1.args + phi.t2.args if not is_var(a))
        elif isinstance(phi, (HoldBefore, HoldAfter)):
            out.update(a for a in phi.t.args + phi.lit.atom.args if not is_var(a))
        elif isinstance(phi, HoldBetween):
            out.update(a for a in phi.t1.args + phi.lit.atom.args + phi.t2.args
                       if not is_var(a))
        elif isinstance(phi, (Not, Next, Always, Eventually)):
            walk_bdf(phi.sub)
        elif isinstance(phi, (And, Or)):
            for p in phi.parts:
                walk_bdf(p)
        elif isinstance(phi, Until):
            walk_bdf(phi.hold)
            walk_bdf(phi.goal)
        elif isinstance(phi, (Exists, Forall)):
            walk_bdf(phi.body)

    def walk(g: GPF):
        if isinstance(g, Atomic):
            for b, _ in g.apf.alts:
                walk_bdf(b)
        elif isinstance(g, Cond):
            walk_bdf(g.cond)
            walk(g.body)
        else:
            for p in g.parts:
                walk(p)

    walk(gpf)
    return out
