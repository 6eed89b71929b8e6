"""Smoke tests for the python module and the command-line tool."""

import json
import math
import os
import subprocess
import tempfile
import unittest

import thermoecon as te

FLAT_PAIR = json.dumps(
    {
        "goods": ["money"],
        "population": {"count": 2, "utility": {"type": "cobb_douglas", "exponents": [1.0]}},
    }
)

TWO_GOODS = json.dumps(
    {
        "goods": ["money", "grain"],
        "population": {"count": 12, "utility": {"type": "cobb_douglas", "exponents": [2.0, 1.5]}},
    }
)


class EconomyTest(unittest.TestCase):
    def test_round_trip_and_shape(self):
        eco = te.Economy.from_json(TWO_GOODS)
        self.assertEqual(eco.agent_count, 12)
        self.assertEqual(eco.good_count, 2)
        self.assertTrue(eco.simple)
        again = te.Economy.from_json(eco.to_json())
        self.assertEqual(again.agent_count, 12)

    def test_conserved_quantities(self):
        eco = te.Economy.from_json(TWO_GOODS)
        state = te.equal_split_state(eco, [24.0, 6.0])
        quantities = te.conserved_quantities(eco, state)
        self.assertEqual(len(quantities), 2)
        self.assertAlmostEqual(quantities[0]["total"], 24.0)

    def test_log_utility(self):
        value = te.log_utility({"type": "complements", "alpha": 2.0, "goods": [0, 1]}, [3.0, 7.0])
        self.assertAlmostEqual(value, math.log(3.0), places=12)


class DynamicsTest(unittest.TestCase):
    def test_conservation_and_determinism(self):
        eco = te.Economy.from_json(TWO_GOODS)
        state = te.equal_split_state(eco, [24.0, 6.0])
        a = te.simulate(eco, state, events=5000, seed=11)
        b = te.simulate(eco, state, events=5000, seed=11)
        self.assertEqual(a.final_state.possessions, b.final_state.possessions)
        money = sum(p[0] for p in a.final_state.possessions)
        self.assertAlmostEqual(money, 24.0, delta=1e-8)

    def test_financial_session_moves_money_in(self):
        eco = te.Economy.from_json(TWO_GOODS)
        state = te.equal_split_state(eco, [24.0, 6.0])
        traj, pot = te.financial_contact_session(eco, state, pot=12.0, events=20000, seed=3)
        money = sum(p[0] for p in traj.final_state.possessions)
        self.assertGreater(money, 24.0)
        self.assertAlmostEqual(money + pot, 36.0, delta=1e-8)

    def test_trading_session_budget(self):
        eco = te.Economy.from_json(TWO_GOODS)
        state = te.equal_split_state(eco, [24.0, 6.0])
        traj = te.trading_contact_session(eco, state, prices={1: 2.0}, events=10000, seed=4)
        wealth = sum(p[0] + 2.0 * p[1] for p in traj.final_state.possessions)
        self.assertAlmostEqual(wealth, 36.0, delta=1e-8)


class PartitionTest(unittest.TestCase):
    def test_flat_pair_log_z(self):
        eco = te.Economy.from_json(FLAT_PAIR)
        model = te.EntropyModel.from_economy(eco)
        macro = te.macro_state_of(eco, te.equal_split_state(eco, [10.0]))
        record = te.log_partition(model, macro)
        self.assertEqual(record["order"], "exact")
        self.assertAlmostEqual(record["value"], math.log(10.0), places=12)

    def test_legendre_round_trip(self):
        model = te.EntropyModel.complements(10, 2.0)
        macro = te.single_component_macro(model, [15.0, 15.0])
        result = te.legendre_entropy(model, macro)
        self.assertAlmostEqual(result["entropy"], 30.0 - 10.0 * math.log(2.0), places=8)
        eq = te.equilibrium_amounts(model, te.CanonicalPoint(result["minimizer"]))
        totals = eq.totals()["totals"]
        for value in totals.values():
            self.assertAlmostEqual(value, 15.0, places=6)

    def test_coolness_and_prices(self):
        eco = te.Economy.from_json(TWO_GOODS)
        model = te.EntropyModel.from_economy(eco)
        macro = te.single_component_macro(model, [100.0, 50.0])
        # Exponent sums: 12 * 2 = 24 for money, 12 * 1.5 = 18 for grain.
        self.assertAlmostEqual(te.coolness(model, macro), 23.0 / 100.0, places=12)
        gv = te.good_values(model, macro)
        self.assertAlmostEqual(gv["price"][1], (17.0 / 50.0) / (23.0 / 100.0), places=12)


class AxiomTest(unittest.TestCase):
    def test_accessibility_and_plan(self):
        eco = te.Economy.from_json(TWO_GOODS)
        model = te.EntropyModel.from_economy(eco)
        x = te.single_component_macro(model, [60.0, 30.0])
        y = te.single_component_macro(model, [90.0, 30.0])
        self.assertEqual(te.accessible(model, x, y), "forward")
        plan = te.plan_transition(model, x, y, eco)
        self.assertEqual(plan["steps"][0]["action"], "add_money")

    def test_suite_passes(self):
        report = te.run_axiom_suite(seed=123, agents=30, session_events=8000)
        self.assertTrue(report["all_pass"])


class ScenarioTest(unittest.TestCase):
    def test_minimal_scenario(self):
        config = {
            "seed": 9,
            "economy": json.loads(FLAT_PAIR),
            "initial": {"equal_split": {"totals": [10.0]}},
            "actions": [],
        }
        report, csv = te.run_scenario(json.dumps(config))
        step = report["replicas"][0]["steps"][0]
        self.assertAlmostEqual(step["log_z"]["value"], math.log(10.0), places=12)
        self.assertTrue(csv.startswith("step,time,event"))

    def test_bad_config_raises(self):
        with self.assertRaises(te.ConfigError):
            te.run_scenario(json.dumps({"economy": json.loads(FLAT_PAIR)}))

    def test_report_validates_against_published_schema(self):
        try:
            import jsonschema
        except ImportError:
            self.skipTest("jsonschema not installed")
        schema_dir = os.path.join(os.path.dirname(__file__), "..", "..", "docs", "schemas")
        with open(os.path.join(schema_dir, "report.schema.json")) as handle:
            report_schema = json.load(handle)
        with open(os.path.join(schema_dir, "economy.schema.json")) as handle:
            economy_schema = json.load(handle)

        config = {
            "seed": 31,
            "economy": json.loads(TWO_GOODS),
            "initial": {"equal_split": {"totals": [24.0, 6.0]}},
            "actions": [
                {"type": "simulate", "events": 2000},
                {"type": "financial_contact", "pot": 5.0, "events": 2000},
            ],
        }
        jsonschema.validate(config["economy"], economy_schema)
        report, _ = te.run_scenario(json.dumps(config))
        jsonschema.validate(report, report_schema)


@unittest.skipUnless(os.environ.get("THERMOECON_CLI"), "cli path not provided")
class CliTest(unittest.TestCase):
    def run_cli(self, *args):
        return subprocess.run(
            [os.environ["THERMOECON_CLI"], *args], capture_output=True, text=True, timeout=300
        )

    def test_run_and_exit_codes(self):
        config = {
            "seed": 21,
            "economy": json.loads(TWO_GOODS),
            "initial": {"equal_split": {"totals": [24.0, 6.0]}},
            "actions": [{"type": "simulate", "events": 2000}],
        }
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "config.json")
            with open(path, "w") as handle:
                json.dump(config, handle)
            result = self.run_cli("run", "--config", path, "--out", tmp)
            self.assertEqual(result.returncode, 0, result.stderr)
            report = json.loads(result.stdout)
            self.assertEqual(report["seed"], 21)
            self.assertTrue(os.path.exists(os.path.join(tmp, "scenario.report.json")))
            self.assertTrue(os.path.exists(os.path.join(tmp, "scenario.series.csv")))

            # Reports are reproducible from the config alone.
            second = self.run_cli("run", "--config", path, "--out", tmp)
            self.assertEqual(result.stdout, second.stdout)

    def test_entropy_subcommand(self):
        config = {
            "economy": json.loads(FLAT_PAIR),
            "macro": {"totals": {"money": 10.0}},
        }
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "entropy.json")
            with open(path, "w") as handle:
                json.dump(config, handle)
            result = self.run_cli("entropy", "--config", path)
            self.assertEqual(result.returncode, 0, result.stderr)
            records = json.loads(result.stdout)
            log_z = [r for r in records if r["quantity"] == "log_z"][0]
            self.assertAlmostEqual(log_z["value"], math.log(10.0), places=10)

    def test_legendre_subcommand(self):
        config = {
            "economy": {
                "goods": ["money", "grain"],
                "population": {
                    "count": 10,
                    "utility": {"type": "complements", "alpha": 2.0, "goods": [0, 1]},
                },
            },
            "macro": {"totals": {"money": 15.0, "grain": 15.0}},
        }
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "legendre.json")
            with open(path, "w") as handle:
                json.dump(config, handle)
            result = self.run_cli("legendre", "--config", path)
            self.assertEqual(result.returncode, 0, result.stderr)
            out = json.loads(result.stdout)
            self.assertAlmostEqual(
                out["entropy"]["value"], 30.0 - 10.0 * math.log(2.0), places=8
            )
            self.assertEqual(len(out["minimizer"]), 2)

    def test_simulate_subcommand(self):
        config = {
            "seed": 5,
            "economy": json.loads(TWO_GOODS),
            "initial": {"equal_split": {"totals": [24.0, 6.0]}},
        }
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "sim.json")
            with open(path, "w") as handle:
                json.dump(config, handle)
            result = self.run_cli("simulate", "--config", path, "--events", "3000", "--out", tmp)
            self.assertEqual(result.returncode, 0, result.stderr)
            report = json.loads(result.stdout)
            steps = report["replicas"][0]["steps"]
            self.assertEqual(steps[1]["action"], "simulate")

    def test_config_error_exit_code(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.json")
            with open(path, "w") as handle:
                handle.write("{\"economy\": {}}")
            result = self.run_cli("run", "--config", path)
            self.assertEqual(result.returncode, 1)
            self.assertIn("config error", result.stderr)

    def test_axioms_subcommand(self):
        result = self.run_cli("axioms")
        self.assertEqual(result.returncode, 0, result.stdout + result.stderr)
        self.assertIn("all checks passed", result.stdout)


if __name__ == "__main__":
    unittest.main()
