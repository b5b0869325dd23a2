"""Tests for bending, the Alexander trick and path monitoring."""

from fractions import Fraction
import unittest

from dotenv import load_dotenv
import pytest

from circlerig.deform.alexander import alexander_path, alexander_trick, global_fixed_point
from circlerig.deform.bending import (
    bend_along_chain,
    bend_nonseparating,
    bend_separating,
    curve_flow,
    nonseparating_path,
    scaled_flow,
)
from circlerig.deform.monitor import DeformationPath, constant_path, monitor_path, uniform_samples
from circlerig.homeo import lifts
from circlerig.representation import representation as reps
from circlerig.representation.fuchsian import fuchsian_closed
from circlerig.representation.orders import verify_chain_order
from circlerig.representation.representation import evaluate_word
from circlerig.shared_libraries.errors import (
    DiscontinuityDetected,
    NoGlobalFixedPoint,
    NotApplicable,
    NotCommuting,
    UnknownGenerator,
    UnsupportedKind,
)
from circlerig.surface import words
from circlerig.surface.chains import dehn_twist
from circlerig.surface.fixtures import builtin_chain_genus2
from circlerig.surface.words import SurfacePresentation


@pytest.fixture(scope="session", autouse=True)
def load_env():
    load_dotenv()


def _fixed_point_rep():
    """Genus-2 representation whose PL generators all fix 0."""
    a = lifts.pl([(0, 0), ("1/2", "1/4")])
    b = lifts.pl([(0, 0), ("1/4", "1/2")])
    return reps.new_representation(SurfacePresentation(genus=2), {"a1": a, "b1": b, "a2": b, "b2": a})


class TestBending(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.rep = fuchsian_closed(2)
        self.pres = self.rep.presentation
        self.a1, self.b1 = self.pres.a(1), self.pres.b(1)

    def test_nonseparating_keeps_euler(self):
        flow = curve_flow(self.rep, self.a1)
        bent = bend_nonseparating(self.rep, self.a1, self.b1, flow, 0.5)
        self.assertEqual(bent.euler, -2)
        self.assertIs(bend_nonseparating(self.rep, self.a1, self.b1, flow, 0), self.rep)

    def test_separating_keeps_euler(self):
        c = self.pres.handle_commutator(1)
        bent = bend_separating(self.rep, c, ["a2", "b2"], curve_flow(self.rep, c), 0.5)
        self.assertEqual(bent.euler, -2)

    def test_separating_rejects_unknown_side(self):
        c = self.pres.handle_commutator(1)
        with self.assertRaises(UnknownGenerator):
            bend_separating(self.rep, c, ["a3"], curve_flow(self.rep, c), 0.5)

    def test_partner_must_be_a_generator(self):
        flow = curve_flow(self.rep, self.a1)
        with self.assertRaises(NotApplicable):
            bend_nonseparating(self.rep, self.a1, words.multiply(self.a1, self.b1), flow, 0.5)
        with self.assertRaises(NotApplicable):
            bend_nonseparating(self.rep, self.a1, words.invert(self.b1), flow, 0.5)

    def test_flow_must_commute(self):
        flow = curve_flow(self.rep, self.a1)
        with self.assertRaises(NotCommuting):
            bend_nonseparating(self.rep, self.b1, self.pres.a(2), flow, 0.5)

    def test_chain_endpoints_are_the_twists(self):
        chain = builtin_chain_genus2()
        for i in range(1, chain.length + 1):
            flow = curve_flow(self.rep, chain.words[i - 1])
            for n in (-2, -1, 1, 2):
                with self.subTest(curve=i, power=n):
                    bent = bend_along_chain(self.rep, chain, i, scaled_flow(flow, n), 1.0)
                    self.assertEqual(bent.euler, -2)
                    twist = dehn_twist(chain, i, n)
                    for w in chain.words:
                        twisted = evaluate_word(self.rep, twist.apply(w))
                        self.assertLess(lifts.circle_distance(evaluate_word(bent, w), twisted), 1e-9)

    def test_generator_bend_is_a_negative_twist(self):
        chain = builtin_chain_genus2()
        flow = curve_flow(self.rep, self.a1)
        bent = bend_nonseparating(self.rep, self.a1, self.b1, scaled_flow(flow, 1), 1.0)
        twist = dehn_twist(chain, 1, -1)
        d = lifts.circle_distance(evaluate_word(bent, self.b1), evaluate_word(self.rep, twist.apply(self.b1)))
        self.assertLess(d, 1e-9)

    def test_small_bends_keep_chain_order(self):
        chain = builtin_chain_genus2()
        path = nonseparating_path(self.rep, self.a1, self.b1, curve_flow(self.rep, self.a1))
        for t in (0.025, 0.05, 0.1):
            with self.subTest(t=t):
                self.assertTrue(verify_chain_order(path.at(t), chain))

    def test_nonseparating_path_records_sign(self):
        path = nonseparating_path(self.rep, self.a1, self.b1, curve_flow(self.rep, self.a1))
        self.assertEqual(path.kind, "bend-nonseparating")
        self.assertEqual(path.details["sign"], 1)
        report = monitor_path(path, [self.a1], samples=[0.0, 0.5, 1.0])
        self.assertEqual([r.euler for r in report.records], [-2, -2, -2])


class TestAlexander(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.rep = _fixed_point_rep()

    def test_common_fixed_point(self):
        self.assertEqual(global_fixed_point(self.rep), 0)

    def test_halfway_squeezes_into_half_circle(self):
        half = alexander_trick(self.rep, "1/2")
        a1 = half["a1"].lift
        self.assertEqual(lifts.evaluate(a1, Fraction(1, 4)), Fraction(1, 8))
        self.assertEqual(lifts.evaluate(a1, Fraction(3, 4)), Fraction(3, 4))
        self.assertEqual(half.euler, 0)

    def test_endpoints(self):
        start = alexander_trick(self.rep, 0)
        for x in (Fraction(1, 4), Fraction(2, 3)):
            self.assertEqual(lifts.evaluate(start["a1"].lift, x), lifts.evaluate(self.rep["a1"].lift, x))
        end = alexander_trick(self.rep, 1)
        self.assertEqual(end.euler, 0)
        for name in end.generators:
            self.assertEqual(lifts.evaluate(end[name].lift, Fraction(1, 3)), Fraction(1, 3))

    def test_parameter_range(self):
        with self.assertRaises(NotApplicable):
            alexander_trick(self.rep, "3/2")

    def test_needs_exact_pl(self):
        with self.assertRaises(UnsupportedKind):
            global_fixed_point(fuchsian_closed(2))

    def test_no_common_fixed_point(self):
        with self.assertRaises(NoGlobalFixedPoint):
            global_fixed_point(reps.rotations(2, ["1/3", "0", "0", "0"]))

    def test_path(self):
        path = alexander_path(self.rep)
        self.assertEqual(path.kind, "alexander")
        self.assertEqual(path.details, {"fixed_point": "0"})
        report = monitor_path(path, [SurfacePresentation(genus=2).a(1)], samples=uniform_samples(5))
        self.assertEqual(len(report.records), 5)


class TestMonitor(unittest.TestCase):
    def test_uniform_samples(self):
        self.assertEqual(uniform_samples(3), (0.0, 0.5, 1.0))
        self.assertEqual(len(uniform_samples()), 33)

    def test_discontinuity(self):
        trivial, fuchsian = reps.trivial(2), fuchsian_closed(2)
        path = DeformationPath(
            base=trivial,
            parameterization=lambda t: trivial if t < 0.5 else fuchsian,
            kind="constant",
            samples=(0.0, 1.0),
        )
        with self.assertRaises(DiscontinuityDetected):
            monitor_path(path, [])

    def test_csv_report(self):
        rep = fuchsian_closed(2)
        report = monitor_path(constant_path(rep), [rep.presentation.a(1)], samples=[0.0, 1.0])
        lines = report.to_csv().splitlines()
        self.assertEqual(lines[0], "t,eu,a1 lo,a1 hi,a1 class")
        self.assertEqual(len(lines), 3)
        self.assertEqual(report.to_json()["kind"], "constant")
