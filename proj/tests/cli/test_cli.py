"""End-to-end tests of the orbconv CLI: schemas, exit codes, determinism."""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

CLI = os.environ.get("ORBCONV_CLI", "")
SCHEMAS = Path(os.environ.get("ORBCONV_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))


def registry():
    reg = Registry()
    for p in SCHEMAS.glob("*.schema.json"):
        reg = reg.with_resource(p.name, Resource.from_contents(json.loads(p.read_text())))
    return reg


REGISTRY = registry()


def run(*args, check=True):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    return proc


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


class Describe(unittest.TestCase):
    def test_hyperbolic_plane(self):
        doc = json.loads(run("describe", "--family", "real-hyperbolic", "--n", "2").stdout)
        validate(doc, "describe")
        self.assertEqual(doc["space"]["rank"], 1)
        self.assertEqual(doc["space"]["dim"], 2)
        self.assertEqual(doc["rho"], [0.5])

    def test_families_validate(self):
        for args in (["--n", "5"], ["--family", "complex-hyperbolic", "--m", "2"],
                     ["--family", "generic-rank-one", "--m-alpha", "4", "--m-2alpha", "3"]):
            doc = json.loads(run("describe", *args).stdout)
            validate(doc, "describe")
            validate(json.loads(json.dumps(doc["space"])), "space")

    def test_invalid_dimension_exits_2(self):
        proc = run("describe", "--family", "real-hyperbolic", "--n", "1", check=False)
        self.assertEqual(proc.returncode, 2)
        self.assertIn("n >= 2", proc.stderr)

    def test_unknown_flag_exits_2(self):
        self.assertEqual(run("describe", "--bogus", check=False).returncode, 2)


class Spherical(unittest.TestCase):
    def test_sweep(self):
        doc = json.loads(run("spherical", "--t", "1,2", "--lambda-max", "4", "--lambda-points", "5").stdout)
        validate(doc, "spherical")
        self.assertEqual(len(doc["values"]), 10)
        self.assertTrue(all(abs(v["im"]) < 1e-12 for v in doc["values"]))

    def test_csv_columns(self):
        lines = run("spherical", "--t", "1", "--lambda-points", "3", "--format", "csv").stdout.splitlines()
        self.assertTrue(lines[0].startswith("# config: "))
        self.assertEqual(lines[1], "t,lambda,re,im")
        self.assertEqual(len(lines), 5)

    def test_budget_exits_3(self):
        proc = run("spherical", "--t", "10", "--lambda-max", "2000", "--lambda-points", "2", "--k-order", "256",
                   check=False)
        self.assertEqual(proc.returncode, 3)


class L2(unittest.TestCase):
    def test_finite_at_threshold(self):
        doc = json.loads(run("l2", "--family", "real-hyperbolic", "--n", "2", "--t", "1,1,1").stdout)
        validate(doc, "l2")
        self.assertEqual(doc["report"]["verdict"], "finite")
        self.assertAlmostEqual(doc["report"]["tail_exponent"], -2.0, delta=0.1)

    def test_divergent_below(self):
        doc = json.loads(run("l2", "--t", "1,1").stdout)
        validate(doc, "l2")
        self.assertEqual(doc["report"]["verdict"], "divergent")
        self.assertIsNone(doc["report"]["value"])

    def test_nonpositive_generator_exits_2(self):
        self.assertEqual(run("l2", "--t", "1,0", check=False).returncode, 2)


class Density(unittest.TestCase):
    def test_profile(self):
        doc = json.loads(run("density", "--t", "1,1,1", "--points", "401").stdout)
        validate(doc, "density")
        self.assertAlmostEqual(doc["mass"], 1.0, delta=1e-3)
        self.assertEqual(len(doc["t"]), 401)

    def test_derivative_column(self):
        lines = run("density", "--t", "1,1,1,1", "--points", "11", "--k", "1", "--format", "csv").stdout.splitlines()
        self.assertEqual(lines[1], "t,rho,jacobian,derivative")
        self.assertEqual(len(lines), 13)

    def test_below_threshold_exits_2(self):
        proc = run("density", "--t", "1,1", check=False)
        self.assertEqual(proc.returncode, 2)
        self.assertIn("below_threshold", proc.stderr)


class Simulate(unittest.TestCase):
    def test_single_generator_is_exact(self):
        lines = run("simulate", "--t", "1", "--N", "1000", "--seed", "7", "--format", "csv").stdout.splitlines()
        self.assertEqual(lines[1], "t")
        self.assertEqual(lines[2:], ["1"] * 1000)

    def test_schema_and_support(self):
        doc = json.loads(run("simulate", "--t", "1,1.5", "--N", "2000", "--seed", "3").stdout)
        validate(doc, "simulate")
        self.assertTrue(all(0.5 - 1e-9 <= s <= 2.5 + 1e-9 for s in doc["samples"]))
        self.assertEqual(sum(doc["histogram"]["count"]), 2000)

    def test_byte_identical(self):
        with tempfile.TemporaryDirectory() as d:
            outs = []
            for i in range(2):
                path = Path(d) / f"run{i}.csv"
                run("simulate", "--t", "1,1.5,0.7", "--N", "70000", "--seed", "11", "--format", "csv",
                    "--out", str(path))
                outs.append(path.read_bytes())
            self.assertEqual(outs[0], outs[1])
            path = Path(d) / "other.csv"
            run("simulate", "--t", "1,1.5,0.7", "--N", "70000", "--seed", "12", "--format", "csv", "--out", str(path))
            self.assertNotEqual(outs[0], path.read_bytes())

    def test_thread_count_does_not_change_samples(self):
        a = json.loads(run("simulate", "--t", "1,2", "--N", "70000", "--threads", "1").stdout)["samples"]
        b = json.loads(run("simulate", "--t", "1,2", "--N", "70000", "--threads", "3").stdout)["samples"]
        self.assertEqual(a, b)

    def test_compare(self):
        doc = json.loads(run("simulate", "--t", "1,1,1", "--N", "50000", "--compare", "--bins", "60").stdout)
        validate(doc, "simulate")
        self.assertLess(doc["comparison"]["ks"], 0.02)

    def test_too_few_bins_exits_2(self):
        self.assertEqual(run("simulate", "--t", "1,1", "--bins", "5", check=False).returncode, 2)


class Config(unittest.TestCase):
    def test_flags_override_file(self):
        with tempfile.TemporaryDirectory() as d:
            cfg = Path(d) / "run.json"
            cfg.write_text(json.dumps({"t": [1, 1.5], "N": 500, "seed": 3, "bins": 20}))
            doc = json.loads(run("simulate", "--config", str(cfg), "--N", "40").stdout)
            validate(doc, "simulate")
            self.assertEqual(doc["config"]["N"], 40)
            self.assertEqual(doc["config"]["seed"], 3)
            self.assertEqual(doc["config"]["t"], [1, 1.5])
            self.assertEqual(len(doc["samples"]), 40)

    def test_missing_config_exits_5(self):
        self.assertEqual(run("describe", "--config", "/nonexistent/run.json", check=False).returncode, 5)

    def test_bad_config_value_exits_2(self):
        with tempfile.TemporaryDirectory() as d:
            cfg = Path(d) / "run.json"
            cfg.write_text(json.dumps({"n": "two"}))
            self.assertEqual(run("describe", "--config", str(cfg), check=False).returncode, 2)


class Verify(unittest.TestCase):
    def test_subset_report(self):
        with tempfile.TemporaryDirectory() as d:
            out = Path(d) / "verify.json"
            proc = run("verify", "--quick", "--criterion", "3,10", "--out", str(out))
            self.assertEqual(proc.stdout.count("PASS"), 2)
            doc = json.loads(out.read_text())
            validate(doc, "verify")
            self.assertTrue(doc["passed"])


if __name__ == "__main__":
    if len(sys.argv) > 1:
        CLI = sys.argv.pop(1)
    unittest.main()
