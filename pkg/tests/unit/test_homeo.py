"""Tests for lifts, classification, flows, blow-ups and contraction dynamics."""

from fractions import Fraction
import math
import unittest

from dotenv import load_dotenv
import numpy as np
import pytest

from circlerig.homeo import lifts
from circlerig.homeo.blowup import denjoy_blowup
from circlerig.homeo.classify import classify, fixed_point_angles
from circlerig.homeo.contraction import (
    contraction_approach,
    contraction_fixed_point,
    find_contraction_power,
)
from circlerig.homeo.flows import conjugating_family, interval_grid, one_parameter_flow
from circlerig.homeo.lifts import CompositeLift, PLLift, RotationLift
from circlerig.rotnum.enclosure import rotation_number
from circlerig.shared_libraries.errors import (
    AmbiguousAtTolerance,
    ExchangedFixedPoints,
    FixedPointInInterval,
    InvalidMap,
    NoFixedPoint,
    NotHyperbolic,
    NotPeriodic,
)
from circlerig.shared_libraries.types import Arc


@pytest.fixture(scope="session", autouse=True)
def load_env():
    load_dotenv()


def _rotation_matrix(turn: float):
    """Matrix moving every direction angle by turn."""
    angle = math.pi * turn
    return [[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]]


class TestLifts(unittest.TestCase):
    """Construction, evaluation and the group operations."""

    def setUp(self):
        super().setUp()
        self.f = lifts.pl([(0, 0), ("1/2", "1/4")])

    def test_rotation_from_string(self):
        self.assertEqual(lifts.rotation("1/3").tau, Fraction(1, 3))

    def test_pl_evaluation_is_exact_and_periodic(self):
        self.assertEqual(lifts.evaluate(self.f, Fraction(1, 4)), Fraction(1, 8))
        self.assertEqual(lifts.evaluate(self.f, Fraction(3, 4)), Fraction(5, 8))
        self.assertEqual(lifts.evaluate(self.f, Fraction(5, 4)), Fraction(9, 8))

    def test_pl_rejects_decreasing_values(self):
        with self.assertRaises(InvalidMap):
            lifts.pl([(0, 0), ("1/2", 0)])

    def test_mobius_rejects_negative_determinant(self):
        with self.assertRaises(InvalidMap):
            lifts.mobius([[1.0, 0.0], [0.0, -1.0]])

    def test_identity_matrix_lift(self):
        self.assertAlmostEqual(lifts.evaluate(lifts.mobius([[1.0, 0.0], [0.0, 1.0]]), 0.3), 0.3, places=12)

    def test_rotations_compose_to_a_rotation(self):
        h = lifts.compose(lifts.rotation("1/3"), lifts.rotation("1/4"))
        self.assertIsInstance(h, RotationLift)
        self.assertEqual(h.tau, Fraction(7, 12))

    def test_inverse_composes_to_identity(self):
        h = lifts.compose(self.f, lifts.invert(self.f))
        self.assertIsInstance(h, PLLift)
        for x in (Fraction(0), Fraction(1, 3), Fraction(5, 7)):
            self.assertEqual(lifts.evaluate(h, x), x)

    def test_power_and_translate(self):
        self.assertEqual(lifts.power(lifts.rotation("1/5"), 5).tau, 1)
        self.assertEqual(lifts.evaluate(lifts.translate(self.f, 2), Fraction(0)), 2)

    def test_canonicalize_reduces_value_at_zero(self):
        self.assertEqual(lifts.canonicalize(lifts.rotation("7/3")).lift.tau, Fraction(1, 3))

    def test_mixed_kinds_stay_composite(self):
        h = lifts.compose(lifts.mobius([[2.0, 0.0], [0.0, 0.5]]), self.f)
        self.assertIsInstance(h, CompositeLift)

    def test_reflect_rotation(self):
        self.assertEqual(lifts.reflect(lifts.rotation("1/3")).tau, Fraction(-1, 3))

    def test_json_record(self):
        record = lifts.lift_to_json(self.f)
        self.assertEqual(record["kind"], "pl")
        self.assertEqual(lifts.lift_from_json(record), self.f)


class TestClassify(unittest.TestCase):
    def test_rotations(self):
        self.assertEqual(classify(lifts.rotation("1/3")).tag, "FixedPointFree")
        self.assertTrue(classify(lifts.identity()).whole_circle)

    def test_pl_hyperbolic(self):
        f = lifts.pl([(0, 0), ("1/4", "1/8"), ("1/2", "1/2"), ("3/4", "7/8")])
        cls = classify(f)
        self.assertEqual(cls.tag, "Hyperbolic")
        self.assertEqual(cls.attracting.angle, 0)
        self.assertEqual(cls.repelling.angle, Fraction(1, 2))

    def test_pl_single_fixed_point(self):
        cls = classify(lifts.pl([(0, 0), ("1/2", "1/4")]))
        self.assertEqual(cls.tag, "SingleNeutralFixed")
        self.assertEqual(cls.point.angle, 0)

    def test_mobius_types(self):
        hyperbolic = classify(lifts.mobius([[3.0, 0.0], [0.0, 1 / 3]]))
        self.assertEqual(hyperbolic.tag, "Hyperbolic")
        self.assertAlmostEqual(hyperbolic.attracting.value, 0.0, places=9)
        self.assertAlmostEqual(hyperbolic.repelling.value, 0.5, places=9)
        self.assertEqual(classify(lifts.mobius(_rotation_matrix(0.3))).tag, "FixedPointFree")
        self.assertEqual(classify(lifts.mobius([[1.0, 1.0], [0.0, 1.0]])).tag, "SingleNeutralFixed")

    def test_composite_conjugate_stays_hyperbolic(self):
        c = lifts.pl([(0, 0), ("1/3", "1/2")])
        h = lifts.conjugate(c, lifts.mobius([[3.0, 0.0], [0.0, 1 / 3]]))
        self.assertEqual(classify(h).tag, "Hyperbolic")

    def test_close_fixed_points_inside_one_grid_cell(self):
        p = np.array([[math.cos(math.pi * t), math.sin(math.pi * t)] for t in (0.0999, 0.10005)]).T
        m = p @ np.diag([2.0, 0.5]) @ np.linalg.inv(p)
        c = lifts.pl([(0, 0), ("1/2", "1/2"), ("3/4", "5/8")])
        cls = classify(lifts.conjugate(c, lifts.mobius(m)))
        self.assertEqual(cls.tag, "Hyperbolic")
        first, second = sorted(fixed_point_angles(cls))
        self.assertAlmostEqual(first, 0.0999, places=6)
        self.assertAlmostEqual(second, 0.10005, places=6)

    def test_touching_displacement_is_ambiguous(self):
        c = lifts.pl([(0, 0), ("1/3", "1/2")])
        with self.assertRaises(AmbiguousAtTolerance):
            classify(lifts.conjugate(c, lifts.mobius([[1.0, 1.0], [0.0, 1.0]])))


class TestFlows(unittest.TestCase):
    def test_mobius_flow_half_time(self):
        flow = one_parameter_flow(lifts.mobius([[4.0, 0.0], [0.0, 0.25]]))
        half = lifts.mobius([[2.0, 0.0], [0.0, 0.5]])
        self.assertLess(lifts.circle_distance(flow(0.5), half), 1e-9)

    def test_pl_flow_time_one(self):
        f = lifts.pl([(0, 0), ("1/2", "1/4")])
        flow = one_parameter_flow(f)
        self.assertEqual(lifts.circle_distance(flow(1), f), 0.0)
        self.assertEqual(lifts.evaluate(flow.lift_at(0), Fraction(1, 3)), Fraction(1, 3))

    def test_scaled_flow(self):
        flow = one_parameter_flow(lifts.mobius([[4.0, 0.0], [0.0, 0.25]]))
        sixteen = lifts.mobius([[16.0, 0.0], [0.0, 1 / 16]])
        self.assertLess(lifts.circle_distance(flow.scaled(2)(1), sixteen), 1e-9)

    def test_flow_is_a_group(self):
        flow = one_parameter_flow(lifts.mobius([[4.0, 0.0], [0.0, 0.25]]))
        self.assertLess(lifts.circle_distance(lifts.compose(flow(0.3), flow(0.4)), flow(0.7)), 1e-9)

    def test_integer_times_are_powers(self):
        m = lifts.mobius([[2.0, 1.0], [1.0, 1.0]])
        flow = one_parameter_flow(m)
        self.assertLess(lifts.circle_distance(flow(2), lifts.power(m, 2)), 1e-12)
        self.assertLess(lifts.circle_distance(flow(-1), lifts.invert(m)), 1e-12)

    def test_fixed_point_free_has_no_flow(self):
        with self.assertRaises(NoFixedPoint):
            one_parameter_flow(lifts.rotation("1/3"))


class TestBlowUp(unittest.TestCase):
    def test_rotation_number_survives(self):
        blown = denjoy_blowup(lifts.rotation("1/3"), 0, 3, ["1/10", "1/10", "1/10"])
        self.assertEqual(rotation_number(blown.f_prime).exact, Fraction(1, 3))
        for start, end in blown.intervals:
            self.assertEqual(end - start, Fraction(1, 10))

    def test_collapse_semi_conjugates(self):
        f = lifts.rotation("2/5")
        blown = denjoy_blowup(f, 0, 5, ["1/20"] * 5)
        for u in (Fraction(0), Fraction(1, 7), Fraction(3, 5)):
            self.assertEqual(blown.h(lifts.evaluate(blown.f_prime, u)), lifts.evaluate(f, blown.h(u)))

    def test_wrong_period(self):
        with self.assertRaises(NotPeriodic):
            denjoy_blowup(lifts.rotation("1/3"), 0, 2, ["1/10", "1/10"])

    def test_weights_must_fit(self):
        with self.assertRaises(InvalidMap):
            denjoy_blowup(lifts.rotation("1/2"), 0, 2, ["1/2", "1/2"])


class TestContraction(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.f = lifts.mobius([[3.0, 0.0], [0.0, 1 / 3]])
        self.g = lifts.mobius(_rotation_matrix(0.25))
        self.arcs = (
            Arc.around(0.5, 0.05),
            Arc.around(0.0, 0.05),
            Arc.around(0.25, 0.05),
            Arc.around(0.25, 0.05),
        )

    def test_power_found_and_alternative(self):
        n = find_contraction_power(self.f, self.g, *self.arcs)
        self.assertGreaterEqual(n, 1)
        alternative = contraction_fixed_point(self.f, self.g, n)
        self.assertEqual(alternative.holds, "both")
        self.assertFalse(alternative.exchanged)

    def test_forward_map_attracts_into_u_plus(self):
        n = find_contraction_power(self.f, self.g, *self.arcs)
        forward = contraction_fixed_point(self.f, self.g, n).forward
        self.assertEqual(forward.tag, "Hyperbolic")
        self.assertTrue(self.arcs[1].contains(forward.attracting.value))

    def test_approach_is_monotone(self):
        records = contraction_approach(self.f, self.g, [5, 10, 20])
        for before, after in zip(records, records[1:]):
            self.assertLessEqual(after.attracting_distance, before.attracting_distance + 1e-12)

    def test_requires_hyperbolic_f(self):
        with self.assertRaises(NotHyperbolic):
            find_contraction_power(self.g, self.f, *self.arcs)

    def test_exchanged_fixed_points(self):
        swap = lifts.mobius(_rotation_matrix(0.5))
        with self.assertRaises(ExchangedFixedPoints):
            contraction_fixed_point(self.f, swap, 3)


class TestConjugatingFamily(unittest.TestCase):
    def test_rotations_are_conjugated_back(self):
        family = conjugating_family(lambda t: lifts.rotation(0.25 + 0.1 * t), (-math.inf, math.inf), [0.0, 0.5, 1.0])
        grid = interval_grid((0.0, 2.0), 20)
        for t in (0.0, 0.5, 1.0):
            self.assertLess(family.conjugacy_error(t, grid), 1e-9)

    def test_fixed_point_in_interval(self):
        f = lifts.pl([(0, 0), ("1/4", "1/8"), ("1/2", "1/2"), ("3/4", "7/8")])
        with self.assertRaises(FixedPointInInterval):
            conjugating_family(lambda t: f, (0.25, 0.75), [0.0])
