"""Tests for the acceptance battery and the SVG writer."""

import random
import unittest

from dotenv import load_dotenv
import pytest

from circlerig.representation.fuchsian import fuchsian_closed
from circlerig.suite import CHECKS, check_milnor_wood, run_check, run_suite
from circlerig.surface.words import parse_word
from circlerig.svg import CircleDiagram, fixed_point_diagram


@pytest.fixture(scope="session", autouse=True)
def load_env():
    load_dotenv()


class TestSuite(unittest.TestCase):
    def test_quick_checks_pass(self):
        results = run_suite(["fuchsian-torus", "fuchsian-euler", "order-laws"], workers=2, seed=1)
        self.assertEqual([r.name for r in results], ["fuchsian-euler", "fuchsian-torus", "order-laws"])
        for r in results:
            self.assertTrue(r.passed, r.detail)

    def test_bending_and_contraction_checks_pass(self):
        for name in ("bending", "contraction"):
            result = run_check(name, 0)
            self.assertTrue(result.passed, result.detail)

    def test_milnor_wood_sees_several_euler_classes(self):
        detail = check_milnor_wood(random.Random(5), reps_count=30, commutators=20)
        self.assertIn("20 commutators within [-1, 1]", detail)

    def test_unknown_check(self):
        with self.assertRaises(KeyError):
            run_suite(["no-such-check"])

    def test_failures_are_reported(self):
        def always_fails(rng):
            raise AssertionError("boom")

        CHECKS["always-fails"] = always_fails
        try:
            result = run_check("always-fails", 0)
        finally:
            del CHECKS["always-fails"]
        self.assertFalse(result.passed)
        self.assertEqual(result.to_json()["detail"], "AssertionError: boom")


class TestSvg(unittest.TestCase):
    def test_diagram_labels(self):
        rep = fuchsian_closed(2)
        text = fixed_point_diagram(rep, [parse_word("a1", 2), parse_word("b1", 2)]).render()
        self.assertTrue(text.startswith("<?xml"))
        self.assertIn("a1+", text)
        self.assertIn("B1-", text)
        self.assertTrue(text.rstrip().endswith("</svg>"))

    def test_text_is_escaped(self):
        diagram = CircleDiagram()
        diagram.text(0.0, 0.0, "a<b")
        self.assertIn("a&lt;b", diagram.render())
