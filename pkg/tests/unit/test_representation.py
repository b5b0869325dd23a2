"""Tests for representations, Euler numbers and the order laws."""

import random
import unittest

from dotenv import load_dotenv
import pytest

from circlerig.homeo import lifts
from circlerig.representation import representation as reps
from circlerig.representation.euler import (
    commutator_translation,
    detect_fuchsian_torus,
    four_holed_identity,
    pants_euler,
    subsurface_euler,
)
from circlerig.representation.fuchsian import (
    fuchsian_closed,
    fuchsian_once_punctured_torus,
    odd_euler_genus2,
    random_representation,
)
from circlerig.representation.orders import (
    fixed_point_table,
    orientation,
    verify_chain_order,
    verify_separation,
)
from circlerig.shared_libraries.errors import (
    CoincidentFixedPoints,
    NotApplicable,
    NotDiscreteRange,
    NotHyperbolic,
    RelatorNotSatisfied,
    UnknownGenerator,
)
from circlerig.surface import words
from circlerig.surface.chains import DirectedChain
from circlerig.surface.fixtures import builtin_chain_genus2, four_holed_sphere_genus2
from circlerig.surface.pants import pants, standard_pants_decomposition
from circlerig.surface.words import SurfacePresentation


@pytest.fixture(scope="session", autouse=True)
def load_env():
    load_dotenv()


class TestRepresentation(unittest.TestCase):
    def test_trivial_is_exact(self):
        rep = reps.trivial(2)
        self.assertEqual(rep.euler, 0)
        self.assertEqual(rep.relator_status, "verified-exact")

    def test_rotations_have_zero_euler(self):
        self.assertEqual(reps.rotations(2, ["1/3", "0", "1/5", "2/7"]).euler, 0)

    def test_fuchsian_euler(self):
        self.assertEqual(reps.euler_number(fuchsian_closed(2)), -2)
        self.assertEqual(fuchsian_closed(3).euler, -4)
        self.assertEqual(fuchsian_closed(2).relator_status, "verified-tol")

    def test_reflection_negates_euler(self):
        self.assertEqual(reps.reflect(fuchsian_closed(2)).euler, 2)

    def test_relator_must_hold(self):
        assignment = {
            "a1": lifts.pl([(0, 0), ("1/2", "1/4")]),
            "b1": lifts.rotation("1/4"),
            "a2": lifts.identity(),
            "b2": lifts.identity(),
        }
        with self.assertRaises(RelatorNotSatisfied):
            reps.new_representation(SurfacePresentation(genus=2), assignment)

    def test_unknown_generators(self):
        with self.assertRaises(UnknownGenerator):
            reps.trivial(2)["c1"]
        with self.assertRaises(UnknownGenerator):
            reps.new_representation(SurfacePresentation(genus=2), {"a1": lifts.identity()})

    def test_free_representation_has_no_euler(self):
        with self.assertRaises(NotApplicable):
            reps.euler_number(fuchsian_once_punctured_torus(3.0))

    def test_random_representations_obey_the_bound(self):
        rng = random.Random(11)
        seen = {random_representation(rng).euler for _ in range(20)}
        self.assertTrue(all(abs(eu) <= 2 for eu in seen), seen)
        self.assertGreater(len(seen), 1)
        with self.assertRaises(NotApplicable):
            random_representation(rng, genus=3)

    def test_odd_euler_handle(self):
        rep = odd_euler_genus2(3.0)
        self.assertEqual(rep.euler, -1)
        self.assertEqual(reps.reflect(rep).euler, 1)
        with self.assertRaises(NotDiscreteRange):
            odd_euler_genus2(2.0)

    def test_commutator_lift_does_not_depend_on_lift_choice(self):
        rep = fuchsian_closed(2)
        c = words.commutator(rep.presentation.a(1), rep.presentation.b(1))
        shifted = reps.evaluate_word_lift(rep, c, {"a1": 2, "b1": -1})
        self.assertLess(lifts.lift_distance(reps.evaluate_word_lift(rep, c), shifted), 1e-12)

    def test_conjugation_keeps_euler(self):
        rep = reps.conjugate(fuchsian_closed(2), lifts.pl([(0, 0), ("1/3", "1/2")]))
        self.assertEqual(rep.euler, -2)

    def test_json_round_trip(self):
        rep = reps.random_pl_representation(random.Random(3))
        again = reps.representation_from_json(reps.representation_to_json(rep))
        self.assertEqual(again.euler, rep.euler)
        self.assertEqual(again.relator_status, rep.relator_status)


class TestEuler(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.rep = fuchsian_closed(2)
        self.pres = self.rep.presentation

    def test_pants_values_are_bounded(self):
        for p in standard_pants_decomposition(self.pres).pants:
            bound = pants_euler(self.rep, p)
            self.assertGreaterEqual(bound.lo, -1 - 1e-6)
            self.assertLessEqual(bound.hi, 1 + 1e-6)

    def test_punctured_torus_pants(self):
        rep = fuchsian_once_punctured_torus(3.0)
        a1, b1 = words.generator("a1"), words.generator("b1")
        p = pants(a1, words.multiply(b1, words.invert(a1), words.invert(b1)))
        self.assertEqual(pants_euler(rep, p).exact, -1)

    def test_rotation_pants_vanish(self):
        rep = reps.rotations(2, ["1/3", "0", "1/5", "2/7"])
        for p in standard_pants_decomposition(rep.presentation).pants:
            self.assertEqual(pants_euler(rep, p).exact, 0)

    def test_subsurface_sum_is_the_euler_number(self):
        total = subsurface_euler(self.rep, standard_pants_decomposition(self.pres))
        self.assertTrue(total.contains(-2, 1e-6))

    def test_four_holed_sphere(self):
        sphere = four_holed_sphere_genus2()
        self.assertTrue(four_holed_identity(self.rep, sphere).contains(-2, 1e-6))
        for decomposition in sphere.decompositions:
            self.assertTrue(subsurface_euler(self.rep, decomposition).contains(-2, 1e-6))

    def test_detects_a_fuchsian_torus(self):
        self.assertIsNotNone(detect_fuchsian_torus(self.rep, words.handle_pairs(self.pres)))
        with self.assertRaises(NotApplicable):
            detect_fuchsian_torus(self.rep, [(self.pres.a(1), self.pres.a(2))])

    def test_trivial_has_no_fuchsian_torus(self):
        rep = reps.trivial(2)
        self.assertIsNone(detect_fuchsian_torus(rep, words.handle_pairs(rep.presentation)))

    def test_punctured_torus(self):
        rep = fuchsian_once_punctured_torus(3.0)
        value = commutator_translation(rep, words.generator("a1"), words.generator("b1"))
        self.assertEqual(abs(value.exact), 1)

    def test_punctured_torus_needs_hyperbolic_commutator(self):
        with self.assertRaises(NotDiscreteRange):
            fuchsian_once_punctured_torus(2.0)
        with self.assertRaises(NotDiscreteRange):
            fuchsian_once_punctured_torus(0.5)


class TestOrders(unittest.TestCase):
    def test_orientation(self):
        self.assertEqual(orientation(0.1, 0.2, 0.3), 1)
        self.assertEqual(orientation(0.3, 0.2, 0.1), -1)
        self.assertEqual(orientation(0.9, 0.1, 0.2), 1)
        self.assertEqual(orientation(0.1, 0.1, 0.3), 0)

    def test_chain_order_on_fuchsian(self):
        self.assertTrue(verify_chain_order(fuchsian_closed(2), builtin_chain_genus2()))

    def test_chain_order_on_conjugate(self):
        rep = reps.conjugate(fuchsian_closed(2), lifts.pl([(0, 0), ("1/4", "1/2"), ("1/2", "5/8")]))
        self.assertTrue(verify_chain_order(rep, builtin_chain_genus2()))

    def test_chain_order_needs_known_length(self):
        pres = SurfacePresentation(genus=2)
        chain = DirectedChain(words=(pres.a(1), pres.b(1)), signs=(1,))
        with self.assertRaises(NotApplicable):
            verify_chain_order(fuchsian_closed(2), chain)

    def test_separation(self):
        torus = fuchsian_once_punctured_torus(3.0)
        self.assertTrue(verify_separation(torus, words.generator("a1"), words.generator("b1")))
        rep = fuchsian_closed(2)
        chain = builtin_chain_genus2()
        self.assertTrue(verify_separation(rep, chain.words[0], chain.words[1]))

    def test_unlinked_pair_is_not_separated(self):
        a = lifts.pl([(0, 0), ("1/4", "1/8"), ("1/2", "1/2"), ("3/4", "7/8")])
        b = lifts.pl([("1/8", "1/8"), ("1/4", "3/16"), ("3/8", "3/8"), ("3/4", "7/8")])
        rep = reps.free_representation({"a1": a, "b1": b})
        self.assertFalse(verify_separation(rep, words.generator("a1"), words.generator("b1")))

    def test_shared_fixed_points_in_a_chain(self):
        h = lifts.pl([(0, 0), ("1/4", "1/8"), ("1/2", "1/2"), ("3/4", "7/8")])
        assignment = {"a1": h, "b1": lifts.power(h, 2), "a2": h, "b2": lifts.power(h, 3)}
        rep = reps.new_representation(SurfacePresentation(genus=2), assignment)
        with self.assertRaises(CoincidentFixedPoints):
            verify_chain_order(rep, builtin_chain_genus2())

    def test_separation_needs_hyperbolic_elements(self):
        pres = SurfacePresentation(genus=2)
        with self.assertRaises(NotHyperbolic):
            verify_separation(reps.trivial(2), pres.a(1), pres.b(1))

    def test_fixed_point_table(self):
        pres = SurfacePresentation(genus=2)
        table = fixed_point_table(fuchsian_closed(2), [pres.a(1)])
        self.assertEqual(table[pres.a(1)].tag, "Hyperbolic")
        self.assertIn(str(pres.a(1)), table.to_json())
        with self.assertRaises(KeyError):
            table[pres.b(1)]
