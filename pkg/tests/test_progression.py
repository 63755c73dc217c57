"""Progression rules, monitors, and the optimistic/pessimistic bounds."""

from fractions import Fraction

import pytest

from conftest import load_fixture

import prefhtn.formulas as F
import prefhtn.progression as P
from prefhtn.oracle import EnumerationCaps, cross_check, enumerate_all
from prefhtn.parser import parse_preference
from prefhtn.progression import Bounds, progress_trace
from prefhtn.semantics import weight_gpf


def replay_pref(text, domain, trace):
    gpf = parse_preference(text, domain)
    universe = ("train", "ticket")
    return progress_trace(gpf, trace, universe)


class TestProgressionRules:
    def test_occ_resolves_at_own_event(self, mini_domain, mini_trace):
        # eventually(occ(!book-train)) settles exactly when the event fires:
        # steps 0-2 are undecided, the book-train event (step 3) decides it
        weight, bnds = replay_pref("(eventually (occ (!book-train)))",
                                   mini_domain, mini_trace)
        assert weight == 0
        assert [b.opt == b.pess for b in bnds] == \
            [False, False, False, True, True, True, True]
        assert bnds[3] == Bounds(Fraction(0), Fraction(0))

    def test_occ_task_needs_termination(self, mini_domain, mini_trace):
        # the task starts at step 1 but only terminates at the final step,
        # so the formula stays undecided until the end marker
        weight, bnds = replay_pref("(eventually (occ (arrange-trans)))",
                                   mini_domain, mini_trace)
        assert weight == 0
        assert bnds[1].opt != bnds[1].pess
        assert bnds[-1] == Bounds(Fraction(0), Fraction(0))

    def test_always_falsifies_immediately(self, mini_domain, mini_trace):
        # (paid) is false in the initial state, so always(paid) is decided
        # at step 0 and the bounds never move again
        weight, bnds = replay_pref("(always (paid))", mini_domain, mini_trace)
        assert weight == 1
        assert all(b == Bounds(Fraction(1), Fraction(1)) for b in bnds)

    def test_final_stays_open_until_terminal(self, mini_domain, mini_trace):
        # (paid) becomes true mid-trace, but final() must not commit early:
        # a later delete could still falsify it
        weight, bnds = replay_pref("(final (paid))", mini_domain, mini_trace)
        assert weight == 0
        assert all(b == Bounds(Fraction(0), Fraction(1)) for b in bnds[:-1])
        assert bnds[-1] == Bounds(Fraction(0), Fraction(0))

    def test_next_and_until(self, mini_domain, mini_trace):
        w, _ = replay_pref("(until (not (paid)) (paid))",
                           mini_domain, mini_trace)
        assert w == 0
        w, _ = replay_pref("(until (paid) (has-car))",
                           mini_domain, mini_trace)
        assert w == 1


class TestMonitors:
    @pytest.mark.parametrize("text,expected", [
        # book-train ends before pay begins
        ("(before (!book-train) (!pay))", 0),
        # pay never precedes book-train
        ("(before (!pay) (!book-train))", 1),
        # t2 never occurs at all: falsified at the terminal step
        ("(before (!book-train) (!book-car))", 1),
        ("(hold-before (!pay) (has-ticket))", 0),
        ("(hold-before (!pay) (paid))", 1),
        ("(hold-after (arrange-trans) (paid))", 0),
        ("(hold-after (arrange-trans) (has-car))", 1),
        ("(hold-between (!book-train) (has-ticket) (!pay))", 0),
        ("(hold-between (!book-train) (paid) (!pay))", 1),
        # negated monitors resolve to the opposite constant
        ("(not (before (!pay) (!book-train)))", 0),
        ("(not (hold-before (!pay) (has-ticket)))", 1),
    ])
    def test_monitor_weights(self, mini_domain, mini_trace, text, expected):
        weight, _ = replay_pref(text, mini_domain, mini_trace)
        assert weight == expected

    @pytest.mark.parametrize("text", [
        "(before (!book-train) (!pay))",
        "(before (!pay) (!book-train))",
        "(hold-before (!pay) (has-ticket))",
        "(hold-after (arrange-trans) (paid))",
        "(hold-between (!book-train) (has-ticket) (!pay))",
        "(eventually (occ (!pay)))",
        "(always (not (occ (!book-car))))",
    ])
    def test_monitors_match_direct_semantics(self, mini_domain, mini_trace,
                                             text):
        gpf = parse_preference(text, mini_domain)
        universe = ("train",)
        weight, _ = progress_trace(gpf, mini_trace, universe)
        assert weight == weight_gpf(mini_trace, gpf, universe)

    def test_literal_mode_resolves_from_prefix(self, mini_domain, mini_trace):
        # the literal rule evaluates the construct over the prefix seen so
        # far at the moment it is progressed; a top-level before is therefore
        # decided against the empty prefix and falsified, while the default
        # monitors track direct semantics
        gpf = parse_preference("(before (!book-train) (!pay))", mini_domain)
        plain, _ = progress_trace(gpf, mini_trace, ())
        literal, _ = progress_trace(gpf, mini_trace, (), paper_literal=True)
        assert plain == weight_gpf(mini_trace, gpf, ()) == 0
        assert literal == 1

    def test_literal_mode_under_eventually(self, mini_domain, mini_trace):
        # re-progressed each step, the literal rule does see the witness once
        # it falls inside the prefix, so both modes agree here
        gpf = parse_preference("(eventually (before (!book-train) (!pay)))",
                               mini_domain)
        plain, _ = progress_trace(gpf, mini_trace, ())
        literal, _ = progress_trace(gpf, mini_trace, (), paper_literal=True)
        assert plain == literal == 0


class TestBounds:
    def test_bounds_invariant(self):
        with pytest.raises(AssertionError):
            Bounds(Fraction(1), Fraction(0))

    def test_apf_bounds_collapse_when_decided(self, mini_domain, mini_trace):
        # after the book-train event the first alternative is falsified and
        # the second (vacuous) one satisfied, pinning both bounds at 0.4
        weight, bnds = replay_pref(
            "(>> ((always (not (occ (!book-train)))) 0) ((and) 0.4))",
            mini_domain, mini_trace)
        assert weight == Fraction(2, 5)
        assert bnds[0] == Bounds(Fraction(0), Fraction(2, 5))
        assert bnds[3] == Bounds(Fraction(2, 5), Fraction(2, 5))

    def test_cond_unresolved_guard_bounds(self, mini_domain, mini_trace):
        # while the guard is undecided the weight may still come out 0,
        # so the optimistic bound must stay at 0
        weight, bnds = replay_pref(
            "(if (eventually (occ (!book-car))) (final (has-car)))",
            mini_domain, mini_trace)
        assert weight == 0  # guard never fires
        assert bnds[0].opt == 0

    def test_simplify_off_same_weights(self, mini_domain, mini_trace):
        gpf = parse_preference(
            "(&! (eventually (occ (!pay)))"
            "    (>> ((always (not (occ (!book-car)))) 0) ((and) 1/2)))",
            mini_domain)
        w_on, b_on = progress_trace(gpf, mini_trace, (), simplify=True)
        w_off, b_off = progress_trace(gpf, mini_trace, (), simplify=False)
        assert w_on == w_off
        assert b_on == b_off


class TestAgainstOracle:
    def test_travel4_optimal_weight_and_bracketing(self):
        problem = load_fixture("travel", 4)
        oracle = enumerate_all(problem, keep_traces=True)
        assert oracle.best_weight == Fraction(2, 5)
        universe = problem.constants
        for trace in oracle.traces:
            weight, bnds = progress_trace(problem.preference, trace, universe)
            assert weight == weight_gpf(trace, problem.preference, universe)
            for b in bnds:
                assert b.opt <= weight <= b.pess

    def test_mutated_progression_is_caught(self, monkeypatch):
        # negative control: break one progression rule and make sure the
        # progression-direct cross check actually notices
        original = P.progress_bdf

        def broken(phi, ctx):
            if isinstance(phi, F.Eventually):
                return F.TRUE
            return original(phi, ctx)

        monkeypatch.setattr(P, "progress_bdf", broken)
        report = cross_check(load_fixture("travel", 2),
                             EnumerationCaps(max_seconds=60.0))
        assert not report.checks["progression-direct"]
