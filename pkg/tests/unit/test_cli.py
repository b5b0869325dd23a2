"""Tests for the circlerig command line."""

import contextlib
import io
import json
import os
import tempfile
import unittest

from dotenv import load_dotenv
import pytest

from circlerig import main as cli


@pytest.fixture(scope="session", autouse=True)
def load_env():
    load_dotenv()


def _run(*argv: str) -> tuple[int, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()
        super().tearDown()

    def _construct(self, kind: str) -> str:
        path = os.path.join(self.tmp, f"{kind}.json")
        code, _ = _run("construct", "--kind", kind, "-o", path)
        self.assertEqual(code, cli.EXIT_OK)
        return path

    def test_fuchsian_invariants(self):
        code, out = _run("invariants", "-i", self._construct("fuchsian"))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("eu = -2", out)

    def test_trivial_invariants_json(self):
        report = os.path.join(self.tmp, "report.json")
        code, out = _run("invariants", "-i", self._construct("trivial"), "--json", report)
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("eu = 0", out)
        with open(report, encoding="utf-8") as f:
            self.assertEqual(json.load(f)["eu"], 0)

    def test_verify_additivity(self):
        code, out = _run("verify", "-i", self._construct("fuchsian"), "--check", "additivity")
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(out.startswith("additivity: pass"))

    def test_chain_order_on_trivial_fails(self):
        code, _ = _run("verify", "-i", self._construct("trivial"), "--check", "chain-order")
        self.assertEqual(code, cli.EXIT_FAILED)

    def test_usage_errors(self):
        code, _ = _run("invariants", "-i", os.path.join(self.tmp, "missing.json"))
        self.assertEqual(code, cli.EXIT_USAGE)
        code, _ = _run("invariants", "--no-such-flag")
        self.assertEqual(code, cli.EXIT_USAGE)
        code, _ = _run("bend", "-i", self._construct("fuchsian"))
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_svg(self):
        path = os.path.join(self.tmp, "fix.svg")
        code, _ = _run("svg", "-i", self._construct("fuchsian"), "--words", "a1,b1", "-o", path)
        self.assertEqual(code, cli.EXIT_OK)
        with open(path, encoding="utf-8") as f:
            self.assertTrue(f.read().startswith("<?xml"))

    def test_bend_report(self):
        csv_path = os.path.join(self.tmp, "bend.csv")
        code, out = _run(
            "bend", "-i", self._construct("fuchsian"),
            "--curve", "a1", "--partner", "b1", "--samples", "3", "--report", csv_path,
        )
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("eu = -2", out)
        with open(csv_path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], "t,eu,a1 lo,a1 hi,a1 class")
        self.assertEqual(len(lines), 4)

    def test_dumps_is_sorted(self):
        self.assertEqual(cli.dumps({"b": 1, "a": 0.1}), '{\n  "a": 0.1,\n  "b": 1\n}')
