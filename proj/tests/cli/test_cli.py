# Copyright 2026 The qssvm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the qssvm command line: exit codes, determinism, schema."""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BIN = os.environ["QSSVM_BIN"]
DATA = Path(os.environ["QSSVM_DATA_DIR"])
SCHEMAS = Path(os.environ["QSSVM_SCHEMA_DIR"])

TRAIN = str(DATA / "two_cluster_8.csv")
GRID = str(DATA / "test_grid_20.csv")


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True, timeout=300)


def load_schema(name):
    schema = json.loads((SCHEMAS / name).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


class ReportSchema(unittest.TestCase):
    run_schema = load_schema("run_report.schema.json")
    cost_schema = load_schema("cost_model.schema.json")

    def validate(self, validator, text):
        report = json.loads(text)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        self.assertEqual([], [f"{list(e.path)}: {e.message}" for e in errors])
        return report

    def test_simulate_report(self):
        out = run("simulate", TRAIN, "--testset", GRID, "--knn", "2")
        self.assertEqual(0, out.returncode, out.stderr)
        report = self.validate(self.run_schema, out.stdout)
        self.assertGreaterEqual(report["quantum_fidelity"], 0.99)
        self.assertEqual(1.0, report["prediction_agreement"])
        self.assertNotIn("timings", report)

    def test_sampled_simulate_with_timings(self):
        out = run("simulate", TRAIN, "--shots", "500", "--timings", "--graph",
                  str(DATA / "two_cluster_8.graph.json"), "--laplacian", "combinatorial")
        self.assertEqual(0, out.returncode, out.stderr)
        report = self.validate(self.run_schema, out.stdout)
        self.assertIn("timings", report)
        self.assertIsNone(report["quantum"]["density_route_deviation"])
        self.assertIn("file", report["config"]["graph"])

    def test_train_report(self):
        out = run("train", TRAIN, "--kernel", "rbf:1.5")
        self.assertEqual(0, out.returncode, out.stderr)
        report = self.validate(self.run_schema, out.stdout)
        self.assertEqual(8, len(report["predictions"]))
        self.assertNotIn("quantum", report)

    def test_bench_report(self):
        out = run("bench", TRAIN, "--dt", "0.2", "--dt", "0.1", "--dt", "0.05")
        self.assertEqual(0, out.returncode, out.stderr)
        report = self.validate(self.run_schema, out.stdout)
        for name in ("K", "KK", "KLK"):
            self.assertTrue(1.8 <= report["lmr_slopes"][name] <= 2.2)

    def test_costmodel_report(self):
        out = run("costmodel", "--m", "4096", "--q", "4", "--p", "8")
        self.assertEqual(0, out.returncode, out.stderr)
        report = self.validate(self.cost_schema, out.stdout)
        self.assertEqual("slow_growth", report["regime"])
        self.assertAlmostEqual(0.5, report["m_exponents"]["quantum"], places=12)
        self.assertAlmostEqual(1.5, report["m_exponents"]["dequantized"], places=12)

    def test_report_file_matches_stdout(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "train.json"
            out = run("train", TRAIN, "--report", str(path))
            self.assertEqual(0, out.returncode, out.stderr)
            self.assertEqual(run("train", TRAIN).stdout.strip(), path.read_text().strip())


class Determinism(unittest.TestCase):
    def test_same_seed_same_bytes(self):
        with tempfile.TemporaryDirectory() as tmp:
            paths = [Path(tmp) / f"r{i}.json" for i in range(2)]
            for p in paths:
                out = run("simulate", TRAIN, "--testset", GRID, "--shots", "1000", "--seed", "7",
                          "--report", str(p))
                self.assertEqual(0, out.returncode, out.stderr)
            self.assertEqual(paths[0].read_bytes(), paths[1].read_bytes())


class ExitCodes(unittest.TestCase):
    def check(self, code, *args):
        out = run(*args)
        self.assertEqual(code, out.returncode, f"{args}: {out.stderr}")
        if code != 0:
            self.assertTrue(out.stderr.strip(), "expected a diagnostic on stderr")
            self.assertEqual("", out.stdout)

    def test_parse_and_input_errors(self):
        self.check(2)
        self.check(2, "simulate")
        self.check(2, "simulate", TRAIN, "--no-such-flag")
        self.check(2, "simulate", TRAIN, "--kernel", "sigmoid")
        self.check(2, "simulate", TRAIN, "--laplacian", "random-walk")
        self.check(2, "simulate", TRAIN, "--knn", "2", "--graph", "g.json")
        self.check(2, "simulate", TRAIN, "--gamma", "-1")
        self.check(2, "simulate", TRAIN, "--clock-qubits", "13")
        self.check(2, "bench", TRAIN, "--dt", "0.1", "--dt", "0.05")
        self.check(2, "costmodel", "--m", "4", "--q", "5")
        self.check(2, "train", str(DATA / "malformed.csv"))

    def test_degree_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            graph = Path(tmp) / "edgeless.json"
            graph.write_text('{"m": 8, "edges": []}')
            self.check(2, "simulate", TRAIN, "--graph", str(graph), "--laplacian", "combinatorial")

    def test_numerical_errors(self):
        self.check(3, "simulate", TRAIN, "--sigma-thresh", "0.99")

    def test_io_errors(self):
        self.check(4, "train", str(DATA / "does_not_exist.csv"))
        self.check(4, "simulate", TRAIN, "--testset", str(DATA / "does_not_exist.csv"))
        self.check(4, "costmodel", "--m", "8", "--report", "/nonexistent/dir/out.json")

    def test_success(self):
        self.check(0, "costmodel", "--m", "8")
        self.check(0, "--version")


if __name__ == "__main__":
    unittest.main(verbosity=2)
