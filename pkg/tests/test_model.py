"""State, event, and trace mechanics."""

import pytest

from prefhtn.errors import IllegalEvent, NotNonprimitive, PreconditionViolation
from prefhtn.model import (Atom, EndEvent, Inst, Literal, Operator,
                           OperatorEvent, StartEvent, State, Task,
                           apply_event, apply_operator, args_match,
                           empty_trace, relevant_methods, replay, unify_args,
                           validate_trace)


def atom(pred, *args):
    return Atom(pred, tuple(args))


def state(*facts):
    return State(frozenset(facts), frozenset(), frozenset())


class TestApplyOperator:
    def test_strips_add_delete(self):
        drive = Operator("drive", ("?a", "?b"),
                         pre=(Literal(atom("at", "?a"), True),),
                         add=(atom("at", "?b"),),
                         delete=(atom("at", "?a"),))
        out = apply_operator(state(atom("at", "c1")), drive, ("c1", "c2"), 0)
        assert out.facts == frozenset({atom("at", "c2")})

    def test_empty_effects_leave_facts_unchanged(self):
        noop = Operator("noop", ())
        before = state(atom("p", "a"))
        out = apply_operator(before, noop, (), 3)
        assert out.facts == before.facts
        assert Inst("op", "noop", (), 3) in out.terminated

    def test_travel_fixture_booking(self):
        from tests.conftest import load_fixture
        prob = load_fixture("travel", 1)
        book = prob.domain.operators["book"]
        out = apply_operator(prob.init, book, ("train",), 0)
        assert atom("booked", "train") in out.facts

    def test_precondition_violation(self):
        op = Operator("go", (), pre=(Literal(atom("ready"), True),))
        with pytest.raises(PreconditionViolation):
            apply_operator(state(), op, (), 0)

    def test_negative_precondition_closed_world(self):
        op = Operator("go", (), pre=(Literal(atom("busy"), False),))
        apply_operator(state(), op, (), 0)  # absent fact satisfies (not busy)
        with pytest.raises(PreconditionViolation):
            apply_operator(state(atom("busy")), op, (), 0)


class TestApplyEvent:
    def test_start_adds_executing(self, mini_domain):
        inst = Inst("method", "m", (), 0)
        out = apply_event(state(), StartEvent(inst), mini_domain)
        assert out.executing == frozenset({inst})
        assert out.terminated == frozenset()

    def test_start_then_end(self, mini_domain):
        inst = Inst("method", "m", (), 0)
        s1 = apply_event(state(), StartEvent(inst), mini_domain)
        s2 = apply_event(s1, EndEvent(inst), mini_domain)
        assert s2.executing == frozenset()
        assert s2.terminated == frozenset({inst})

    def test_operator_event_never_executing(self, mini_domain):
        ev = OperatorEvent("pay", (), 0)
        out = apply_event(state(), ev, mini_domain)
        assert out.executing == frozenset()
        assert ev.inst in out.terminated

    def test_end_without_start_rejected(self, mini_domain):
        with pytest.raises(IllegalEvent):
            apply_event(state(), EndEvent(Inst("task", "t", (), 0)),
                        mini_domain)

    def test_double_start_rejected(self, mini_domain):
        inst = Inst("task", "t", (), 0)
        s1 = apply_event(state(), StartEvent(inst), mini_domain)
        with pytest.raises(IllegalEvent):
            apply_event(s1, StartEvent(inst), mini_domain)


class TestRelevantMethods:
    def test_declaration_order(self, mini_domain):
        out = relevant_methods(Task("arrange-trans"), mini_domain)
        assert [m.branch for m, _ in out] == ["by-train-trans", "by-car-trans"]

    def test_primitive_task_rejected(self, mini_domain):
        with pytest.raises(NotNonprimitive):
            relevant_methods(Task("pay", (), primitive=True), mini_domain)

    def test_conflicting_constant_args(self, mini_domain):
        from tests.conftest import load_fixture
        dom = load_fixture("travel", 1).domain
        assert relevant_methods(Task("arrange-trans", ("x", "y")), dom) == []


class TestTrace:
    def test_validator_accepts_replayed_trace(self, mini_trace, mini_domain):
        validate_trace(mini_trace, mini_domain)

    def test_validator_rejects_tampered_states(self, mini_trace, mini_domain):
        import dataclasses
        bad = dataclasses.replace(
            mini_trace,
            states=mini_trace.states[:-1] + (mini_trace.states[0],))
        with pytest.raises(IllegalEvent):
            validate_trace(bad, mini_domain)

    def test_terminated_grows_monotonically(self, mini_trace):
        for a, b in zip(mini_trace.states, mini_trace.states[1:]):
            assert a.terminated <= b.terminated

    def test_executing_interval(self, mini_trace):
        # a unit instance is "executing" exactly between its start and end
        method = Inst("method", "by-train-trans", (), 1)
        flags = [method in s.executing for s in mini_trace.states]
        assert flags == [False, False, True, True, True, False, False]

    def test_plan_projection(self, mini_trace):
        assert [e.name for e in mini_trace.plan()] == ["book-train", "pay"]


class TestMatching:
    def test_unify_binds_variables(self):
        assert unify_args(("?x", "b"), ("a", "b")) == {"?x": "a"}
        assert unify_args(("?x", "?x"), ("a", "b")) is None

    def test_args_match_equal_arity(self):
        assert args_match(("a", "b"), ("a", "b"))
        assert not args_match(("a", "b"), ("b", "a"))

    def test_args_match_subsequence(self):
        # a shorter pattern matches in-order through extra arguments
        assert args_match(("a", "c"), ("a", "b", "c"))
        assert not args_match(("c", "a"), ("a", "b", "c"))
        assert args_match((), ("a",))
