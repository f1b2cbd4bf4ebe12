import json
import os
import tempfile
import unittest
from unittest import mock

import main
from polyhedra.hull import HullError

class TestRun(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, "report.json")

    def tearDown(self):
        self.tmp.cleanup()

    def run_json(self, *args):
        code = main.run(list(args) + ["--json", "--out", self.out])
        with open(self.out) as f:
            return code, json.load(f)

    def test_hull(self):
        code, report = self.run_json("hull", "test_inputs/triangle.json")
        self.assertEqual(0, code)
        self.assertEqual([0, 1, 2], report["extreme_points"])
        self.assertEqual(2, report["dimension"])
        self.assertIn("(0,1,2)", report["pseudovertices"])

    def test_member(self):
        code, report = self.run_json("member", "test_inputs/triangle.json", "--point", "0,2,1")
        self.assertEqual(0, code)
        self.assertTrue(report["inside"])
        self.assertEqual([-1, 0, -2], report["coefficients"])
        code, report = self.run_json("member", "test_inputs/triangle.json", "--point", "0, 4, 0")
        self.assertEqual(0, code)
        self.assertFalse(report["inside"])

    def test_member_needs_a_point(self):
        self.assertEqual(2, main.run(["member", "test_inputs/triangle.json"]))

    def test_jfacets(self):
        code, report = self.run_json("jfacets", "test_inputs/triangle.json")
        self.assertEqual(0, code)
        self.assertEqual(["AB", "AC", "BC"], [f["vertices"] for f in report["j_facets"]])
        self.assertTrue(report["graded"])
        self.assertEqual("H1 = Z", report["complex_homology"])

    def test_faces(self):
        code, report = self.run_json("faces", "test_inputs/triangle.json", "--samples", "1")
        self.assertEqual(0, code)
        self.assertEqual([3, 3], report["f_vector"])
        self.assertEqual("hull", report["lifts"][0])
        self.assertEqual({"AB", "AC", "BC"}, set(report["directions"]))

    def test_resolve(self):
        code, report = self.run_json("resolve", "test_inputs/ideal_xy.json")
        self.assertEqual(0, code)
        self.assertEqual([2, 1], report["ranks"])
        self.assertTrue(report["resolution"])
        self.assertEqual([2, 1], report["betti"])
        self.assertTrue(report["betti_agrees"])
        self.assertEqual([], report["failed"])

    def test_resolve_generic(self):
        code, report = self.run_json("resolve", "test_inputs/ideal_x4.json", "--lift", "generic", "--seed", "3")
        self.assertEqual(0, code)
        self.assertEqual("generic:3", report["lift"])
        self.assertEqual([4, 3], report["ranks"])

    def test_svg(self):
        path = os.path.join(self.tmp.name, "triangle.svg")
        self.assertEqual(0, main.run(["svg", "test_inputs/triangle.json", "--out", path, "--overlay"]))
        self.assertTrue(os.path.exists(path))

    def test_svg_needs_the_plane_or_space(self):
        self.assertEqual(2, main.run(["svg", "test_inputs/ideal_xy.json"]))

class TestInputErrors(unittest.TestCase):

    def test_wrong_payload(self):
        self.assertEqual(2, main.run(["hull", "test_inputs/ideal_xy.json"]))
        self.assertEqual(2, main.run(["resolve", "test_inputs/triangle.json"]))

    def test_bad_files(self):
        self.assertEqual(2, main.run(["hull", "test_inputs/bad_syntax.json"]))
        self.assertEqual(2, main.run(["hull", "test_inputs/bad_float.json"]))
        self.assertEqual(2, main.run(["hull", "test_inputs/missing.json"]))

    def test_bad_options(self):
        self.assertEqual(2, main.run(["resolve", "test_inputs/ideal_xy.json", "--lift", "best"]))
        self.assertEqual(2, main.run(["hull", "test_inputs/triangle.json", "--seed", "-1"]))
        self.assertEqual(2, main.run(["faces", "test_inputs/triangle.json", "--k", "-1"]))

class TestInvariantErrors(unittest.TestCase):

    def test_failed_verdict_still_reports(self):
        def failing(job, data):
            raise main.VerdictFailed({"resolution": False})
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "report.json")
            with mock.patch.dict(main.HANDLERS, {"resolve": failing}):
                code = main.run(["resolve", "test_inputs/ideal_xy.json", "--json", "--out", out])
            self.assertEqual(3, code)
            with open(out) as f:
                self.assertEqual({"resolution": False}, json.load(f))

    def test_hull_error(self):
        def broken(job, data):
            raise HullError("lineality space")
        with mock.patch.dict(main.HANDLERS, {"hull": broken}):
            self.assertEqual(3, main.run(["hull", "test_inputs/triangle.json"]))

class TestJobSpec(unittest.TestCase):

    def test_seeds(self):
        job = main.JobSpec(command="resolve", input="x.json", seed=5)
        self.assertEqual([5, 6, 7], job.seeds(3))

    def test_format_text(self):
        text = main.format_text({"ranks": [2, 1], "cells": [{"label": "x*y"}]})
        self.assertEqual("ranks: [2, 1]\ncells:\n  label=x*y", text)

if __name__ == "__main__":
    unittest.main()
