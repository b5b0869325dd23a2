"""Tests for surface words, chains, Dehn twists and pants decompositions."""

import unittest

from dotenv import load_dotenv
import pytest

from circlerig.shared_libraries.errors import (
    IndexOutOfRange,
    InvalidChain,
    InvalidDecomposition,
    InvalidWord,
    MixedPresentations,
)
from circlerig.surface import words
from circlerig.surface.chains import ChainSubstitution, DirectedChain, dehn_twist
from circlerig.surface.fixtures import builtin_chain_genus2, four_holed_sphere_genus2
from circlerig.surface.pants import Pants, pants, standard_pants_decomposition
from circlerig.surface.words import SurfacePresentation, Word, parse_word


@pytest.fixture(scope="session", autouse=True)
def load_env():
    load_dotenv()


class TestWords(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.pres = SurfacePresentation(genus=2)
        self.a1, self.b1 = self.pres.a(1), self.pres.b(1)
        self.a2, self.b2 = self.pres.a(2), self.pres.b(2)

    def test_parse_and_format(self):
        w = parse_word("a1 B1'", 2)
        self.assertEqual(w.letters, (("a1", 1), ("b1", -1)))
        self.assertEqual(str(w), "a1 B1'")
        self.assertEqual(parse_word("a2^3").letters, (("a2", 3),))
        self.assertEqual(parse_word("B a").letters, (("b1", 1), ("a1", 1)))
        self.assertTrue(parse_word("1").is_empty)
        self.assertEqual(str(words.empty()), "1")

    def test_parse_rejects_garbage(self):
        with self.assertRaises(InvalidWord):
            parse_word("x1")
        with self.assertRaises(InvalidWord):
            parse_word("a3", 2)

    def test_free_reduction(self):
        self.assertTrue(Word.of([("a1", 1), ("b1", 2), ("b1", -2), ("a1", -1)]).is_empty)
        self.assertEqual(words.multiply(self.a1, words.invert(self.a1)), words.empty(2))

    def test_relator(self):
        rel = words.relator(self.pres)
        self.assertEqual(len(rel), 8)
        self.assertEqual(str(rel), "B1' a1' B1 a1 B2' a2' B2 a2")

    def test_intersection_pairing(self):
        self.assertEqual(words.algebraic_intersection(self.a1, self.b1), 1)
        self.assertEqual(words.algebraic_intersection(self.b1, self.a1), -1)
        self.assertEqual(words.algebraic_intersection(self.a1, self.a2), 0)
        self.assertEqual(words.algebraic_intersection(self.pres.handle_commutator(1), self.b2), 0)

    def test_conjugacy(self):
        self.assertTrue(words.are_conjugate(words.conjugate(self.a1, self.b1), self.a1))
        self.assertFalse(words.are_conjugate(self.a1, words.invert(self.a1)))

    def test_mixed_presentations(self):
        with self.assertRaises(MixedPresentations):
            words.multiply(self.a1, SurfacePresentation(genus=3).a(1))

    def test_substitute(self):
        image = words.substitute(self.pres.handle_commutator(1), {"a1": self.b1, "b1": self.a1}, 2)
        self.assertEqual(image, words.invert(self.pres.handle_commutator(1)))


class TestChains(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.chain = builtin_chain_genus2()
        self.pres = SurfacePresentation(genus=2)

    def test_builtin_chain(self):
        self.assertEqual(self.chain.length, 5)
        self.assertEqual(self.chain.signs, (-1, -1, -1, -1))
        self.assertEqual(self.chain.genus, 2)

    def test_bad_intersection(self):
        with self.assertRaises(InvalidChain):
            DirectedChain(words=(self.pres.a(1), self.pres.a(2)), signs=(1,))

    def test_twist_index_range(self):
        with self.assertRaises(IndexOutOfRange):
            dehn_twist(self.chain, 0, 1)
        with self.assertRaises(IndexOutOfRange):
            dehn_twist(self.chain, 6, 1)

    def test_zero_twist_is_identity(self):
        self.assertTrue(dehn_twist(self.chain, 3, 0).is_identity)

    def test_twist_then_inverse(self):
        twist = dehn_twist(self.chain, 2, 3)
        self.assertTrue(twist.compose(twist.inverse()).is_identity)
        self.assertTrue(twist.inverse().compose(twist).is_identity)

    def test_twist_on_generators(self):
        twist = dehn_twist(self.chain, 1, 1)
        self.assertEqual(twist.apply(self.pres.b(1)).letters, (("a1", -1), ("b1", 1)))
        self.assertEqual(twist.apply(self.pres.a(1)), self.pres.a(1))
        self.assertEqual(twist.apply(self.pres.a(2)), self.pres.a(2))

    def test_twist_fixes_its_curve(self):
        for i in range(1, 6):
            twist = dehn_twist(self.chain, i, 2)
            self.assertEqual(twist.image_of_element(i), self.chain.words[i - 1])

    def test_apply_without_generator_words(self):
        chain = DirectedChain(words=(self.pres.a(1), self.pres.b(1)), signs=(1,))
        twist = dehn_twist(chain, 1, 1)
        self.assertEqual(twist.apply(self.pres.b(1)), words.multiply(self.pres.b(1), self.pres.a(1)))
        with self.assertRaises(InvalidChain):
            twist.apply(self.pres.a(2))

    def test_identity_substitution(self):
        self.assertTrue(ChainSubstitution.identity(self.chain).is_identity)


class TestPants(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.pres = SurfacePresentation(genus=2)

    def test_third_boundary(self):
        p = pants(self.pres.a(1), self.pres.b(1))
        self.assertEqual(p.third, words.multiply(words.invert(self.pres.a(1)), words.invert(self.pres.b(1))))

    def test_third_must_close(self):
        with self.assertRaises(InvalidDecomposition):
            Pants(a=self.pres.a(1), d=self.pres.b(1), third=self.pres.a(2))

    def test_standard_decompositions_are_closed(self):
        for genus, count in ((2, 2), (3, 4), (4, 6)):
            decomposition = standard_pants_decomposition(SurfacePresentation(genus=genus))
            self.assertEqual(len(decomposition.pants), count)
            self.assertEqual(decomposition.free_boundary(), [])

    def test_four_holed_sphere(self):
        sphere = four_holed_sphere_genus2()
        self.assertEqual(len(sphere.boundary), 4)
        self.assertEqual(len(sphere.decompositions), 2)
        for decomposition in sphere.decompositions:
            self.assertEqual(len(decomposition.free_boundary()), 4)
