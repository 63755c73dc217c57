"""Ground symbolic vocabulary for HTN planning.

Terms, literals, states, operators, methods, task networks, events and
traces. All values are immutable; event application returns a new state so
search nodes can be extended independently.

A trace records the full event history, including the start/end events of
nonprimitive tasks and method applications; a plan is the projection of a
trace onto its operator events.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Union

from .errors import IllegalEvent, NotNonprimitive, PreconditionViolation


def is_var(term: str) -> bool:
    return term.startswith("?")


def is_ground(args: tuple[str, ...]) -> bool:
    return not any(is_var(a) for a in args)


class Atom(NamedTuple):
    pred: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(%s)" % " ".join((self.pred,) + self.args)


class Literal(NamedTuple):
    atom: Atom
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"(not {self.atom})"


Subst = dict[str, str]


def subst_args(args: tuple[str, ...], sigma: Subst) -> tuple[str, ...]:
    return tuple(sigma.get(a, a) for a in args)


def subst_atom(atom: Atom, sigma: Subst) -> Atom:
    return Atom(atom.pred, subst_args(atom.args, sigma))


def subst_literal(lit: Literal, sigma: Subst) -> Literal:
    return Literal(subst_atom(lit.atom, sigma), lit.positive)


def unify_args(pattern: tuple[str, ...], ground: tuple[str, ...],
               sigma: Optional[Subst] = None) -> Optional[Subst]:
    """Match pattern args (may contain variables) against ground args."""
    if len(pattern) != len(ground):
        return None
    out = dict(sigma) if sigma else {}
    for p, g in zip(pattern, ground):
        p = out.get(p, p)
        if is_var(p):
            out[p] = g
        elif p != g:
            return None
    return out


def args_match(pattern: tuple[str, ...], actual: tuple[str, ...]) -> bool:
    """Ground-pattern match with suppressed parameters.

    Equal arity requires positional equality; a shorter pattern matches when
    its args appear in the actual args in order, so a preference may write
    (occ (!book train)) against an operator that carries extra arguments.
    """
    if len(pattern) == len(actual):
        return pattern == actual
    if len(pattern) > len(actual):
        return False
    it = iter(actual)
    return all(p in it for p in pattern)


@dataclass(frozen=True)
class Task:
    name: str
    args: tuple[str, ...] = ()
    primitive: bool = False

    def ground(self, sigma: Subst) -> "Task":
        return Task(self.name, subst_args(self.args, sigma), self.primitive)

    def __str__(self) -> str:
        head = ("!" if self.primitive else "") + self.name
        return "(%s)" % " ".join((head,) + self.args)


@dataclass(frozen=True)
class Operator:
    """STRIPS-style primitive action: literal preconditions, add/delete lists."""

    name: str
    params: tuple[str, ...]
    pre: tuple[Literal, ...] = ()
    add: tuple[Atom, ...] = ()
    delete: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class Unordered:
    """A group of agenda segments whose members may advance in any order."""

    members: tuple[tuple, ...]


@dataclass(frozen=True)
class Method:
    """Decomposition rule for one nonprimitive task.

    before lists (literal, subtask index) pairs: the literal must hold in the
    state immediately before the indexed subtask starts.
    """

    branch: str
    task: Task
    pre: tuple[Literal, ...] = ()
    subtasks: tuple[Task, ...] = ()
    unordered: bool = False
    before: tuple[tuple[Literal, int], ...] = ()


@dataclass
class Domain:
    name: str
    operators: dict[str, Operator]
    methods: tuple[Method, ...]

    def methods_for(self, task_name: str) -> tuple[Method, ...]:
        return tuple(m for m in self.methods if m.task.name == task_name)


class Inst(NamedTuple):
    """One occurrence of an operator, task or method application.

    kind is "op", "task" or "method"; uid is unique within a trace (the index
    of the event that introduced the instance).
    """

    kind: str
    name: str
    args: tuple[str, ...]
    uid: int


@dataclass(frozen=True)
class OperatorEvent:
    name: str
    args: tuple[str, ...]
    uid: int

    @property
    def inst(self) -> Inst:
        return Inst("op", self.name, self.args, self.uid)

    def __str__(self) -> str:
        return "(%s)" % " ".join(("!" + self.name,) + self.args)


@dataclass(frozen=True)
class StartEvent:
    inst: Inst

    def __str__(self) -> str:
        return f"start[{self.inst.kind} {self.inst.name}{self.inst.args}#{self.inst.uid}]"


@dataclass(frozen=True)
class EndEvent:
    inst: Inst

    def __str__(self) -> str:
        return f"end[{self.inst.kind} {self.inst.name}{self.inst.args}#{self.inst.uid}]"


Event = Union[OperatorEvent, StartEvent, EndEvent]


@dataclass(frozen=True)
class State:
    """Immutable planning state.

    facts holds ground atoms under the closed-world assumption; executing and
    terminated track task/method instances per the two successor state axioms
    (operator occurrences go straight to terminated, never to executing).
    """

    facts: frozenset[Atom]
    executing: frozenset[Inst] = frozenset()
    terminated: frozenset[Inst] = frozenset()

    def holds(self, lit: Literal) -> bool:
        present = lit.atom in self.facts
        return present if lit.positive else not present

    def holds_all(self, lits) -> bool:
        return all(self.holds(l) for l in lits)

    def has_executing(self, kind: str, name: str, args: tuple[str, ...]) -> bool:
        return any(i.kind == kind and i.name == name and args_match(args, i.args)
                   for i in self.executing)

    def has_terminated(self, kind: str, name: str, args: tuple[str, ...]) -> bool:
        return any(i.kind == kind and i.name == name and args_match(args, i.args)
                   for i in self.terminated)


def ground_operator(op: Operator, args: tuple[str, ...]) -> tuple[tuple[Literal, ...], tuple[Atom, ...], tuple[Atom, ...]]:
    if len(op.params) != len(args):
        raise PreconditionViolation(None, f"operator {op.name} expects {len(op.params)} args, got {len(args)}")
    sigma = dict(zip(op.params, args))
    pre = tuple(subst_literal(l, sigma) for l in op.pre)
    add = tuple(subst_atom(a, sigma) for a in op.add)
    delete = tuple(subst_atom(a, sigma) for a in op.delete)
    return pre, add, delete


def apply_operator(state: State, op: Operator, args: tuple[str, ...], uid: int) -> State:
    """STRIPS application: facts' = (facts \\ del) | add, plus termination bookkeeping."""
    pre, add, delete = ground_operator(op, args)
    for lit in pre:
        if not state.holds(lit):
            raise PreconditionViolation(lit)
    facts = (state.facts - frozenset(delete)) | frozenset(add)
    return State(facts, state.executing,
                 state.terminated | {Inst("op", op.name, args, uid)})


def apply_event(state: State, event: Event, domain: Domain) -> State:
    if isinstance(event, OperatorEvent):
        op = domain.operators.get(event.name)
        if op is None:
            raise IllegalEvent(f"unknown operator {event.name}")
        return apply_operator(state, op, event.args, event.uid)
    if isinstance(event, StartEvent):
        inst = event.inst
        if inst in state.executing or inst in state.terminated:
            raise IllegalEvent(f"instance already started: {inst}")
        return State(state.facts, state.executing | {inst}, state.terminated)
    if isinstance(event, EndEvent):
        inst = event.inst
        if inst not in state.executing:
            raise IllegalEvent(f"instance not executing: {inst}")
        return State(state.facts, state.executing - {inst}, state.terminated | {inst})
    raise IllegalEvent(f"unknown event {event!r}")


@dataclass(frozen=True)
class Trace:
    """Event sequence plus the state after each prefix; |states| = |events| + 1."""

    events: tuple[Event, ...]
    states: tuple[State, ...]

    @property
    def initial_state(self) -> State:
        return self.states[0]

    @property
    def final_state(self) -> State:
        return self.states[-1]

    def plan(self) -> tuple[OperatorEvent, ...]:
        return tuple(e for e in self.events if isinstance(e, OperatorEvent))

    def extend(self, event: Event, domain: Domain) -> "Trace":
        return Trace(self.events + (event,),
                     self.states + (apply_event(self.states[-1], event, domain),))


def empty_trace(init: State) -> Trace:
    return Trace((), (init,))


def replay(init: State, events, domain: Domain) -> Trace:
    tr = empty_trace(init)
    for e in events:
        tr = tr.extend(e, domain)
    return tr


def validate_trace(trace: Trace, domain: Domain) -> None:
    """Check the trace invariants; raises IllegalEvent on violation."""
    if len(trace.states) != len(trace.events) + 1:
        raise IllegalEvent("state/event length mismatch")
    rebuilt = replay(trace.initial_state, trace.events, domain)
    if rebuilt.states != trace.states:
        raise IllegalEvent("states do not follow from event application")
    seen_uids: set[int] = set()
    started: set[Inst] = set()
    for e in trace.events:
        if isinstance(e, (StartEvent, EndEvent)):
            inst = e.inst
            if isinstance(e, StartEvent):
                if inst.uid in seen_uids:
                    raise IllegalEvent(f"duplicate instance id {inst.uid}")
                seen_uids.add(inst.uid)
                started.add(inst)
            elif inst not in started:
                raise IllegalEvent(f"end without start: {inst}")
        else:
            if e.uid in seen_uids:
                raise IllegalEvent(f"duplicate instance id {e.uid}")
            seen_uids.add(e.uid)


def relevant_methods(task: Task, domain: Domain) -> list[tuple[Method, Subst]]:
    """Methods whose head unifies with the ground task, in declaration order."""
    if task.primitive:
        raise NotNonprimitive(f"task {task.name} is primitive")
    out = []
    for m in domain.methods:
        if m.task.name != task.name:
            continue
        sigma = unify_args(m.task.args, task.args)
        if sigma is not None:
            out.append((m, sigma))
    return out


@dataclass
class Problem:
    name: str
    init: State
    network: tuple  # Task | Unordered items, totally ordered
    domain: Domain
    preference: object = None  # formulas.GPF, attached by the caller
    _constants: tuple[str, ...] = field(default=None, repr=False, compare=False)

    @property
    def constants(self) -> tuple[str, ...]:
        """The constant universe: every constant mentioned anywhere in the problem."""
        if self._constants is None:
            seen: set[str] = set()
            for atom in self.init.facts:
                seen.update(atom.args)

            def add_task(t: Task):
                seen.update(a for a in t.args if not is_var(a))

            def add_items(items):
                for it in items:
                    if isinstance(it, Unordered):
                        for mem in it.members:
                            add_items(mem)
                    else:
                        add_task(it)

            add_items(self.network)
            for op in self.domain.operators.values():
                for lit in op.pre:
                    seen.update(a for a in lit.atom.args if not is_var(a))
                for atom in op.add + op.delete:
                    seen.update(a for a in atom.args if not is_var(a))
            for m in self.domain.methods:
                add_task(m.task)
                for lit in m.pre:
                    seen.update(a for a in lit.atom.args if not is_var(a))
                for st in m.subtasks:
                    add_task(st)
            from .formulas import formula_constants  # local import, avoids a cycle
            if self.preference is not None:
                seen.update(formula_constants(self.preference))
            self._constants = tuple(sorted(seen))
        return self._constants
