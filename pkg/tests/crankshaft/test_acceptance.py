"""
Acceptance sweeps over the full verification ranges

The reduced sweeps always run. Set CRANKSHAFT_FULL_ACCEPTANCE=1 to run the
full ranges (several minutes).
"""

import unittest
import sys
import os

# Add scripts to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../scripts'))

from crankshaft import bijections, identities
from crankshaft.config import CrankshaftConfig
from crankshaft.statistics import StatisticsEngine

FULL = os.environ.get('CRANKSHAFT_FULL_ACCEPTANCE') == '1'


def engine_for(order, **overrides):
    settings = dict(composition_cutoff=14, vector_cutoff=8, partition_cutoff=25, series_order=order)
    settings.update(overrides)
    return StatisticsEngine(CrankshaftConfig(properties_path=None, **settings))


class TestGoldenValues(unittest.TestCase):
    """
    Known exact values
    """

    def test_golden(self):
        engine = engine_for(60)
        self.assertEqual([engine.u(m, 4) for m in (0, 1, 2)], [8, 12, 4])
        self.assertEqual([engine.C(0, 5), engine.C(1, 5)], [3, 4])
        self.assertEqual(engine.M(3, 18), 3)
        self.assertEqual(engine.P_tilde(2, 17), 9)
        self.assertEqual(engine.p(5), 7)
        self.assertEqual([engine.C(m, 1) for m in (0, 1, 2)], [1, 0, -1])


class TestReducedSweeps(unittest.TestCase):
    """
    The acceptance families on reduced ranges
    """

    @classmethod
    def setUpClass(cls):
        cls.engine = engine_for(120)

    def check(self, name, n_max, **params):
        report = identities.REGISTRY[name].func(self.engine, n_max, **params)
        self.assertTrue(report.passed, f"{name} {params}: {report.counterexample}")
        return report

    def test_thm1_by_series(self):
        self.check("thm1", 100)

    def test_theorems_two_and_three(self):
        for m in (0, 1, 2):
            for k in (1, 2, 3, 4):
                for name in ("thm2", "thm3", "cor2", "cor4_ineq"):
                    self.check(name, 50, m=m, k=k)

    def test_strictness_pattern(self):
        """
        Recorded equalities all lie at or past k(3k+1)/2
        """
        for m in (0, 1, 2):
            for k in (1, 2, 3):
                report = self.check("cor2", 50, m=m, k=k)
                self.assertTrue(all(n >= report.details["strict_from"] for n in report.details["non_strict"]))

    def test_cor4_and_cor5(self):
        for m in (0, 1, 2):
            self.check("cor4", 60, m=m)
            for k in (1, 2, 3):
                self.check("cor5", 15, m=m, k=k)

    def test_truncated_pentagonal_family(self):
        for k in (1, 2, 3, 4):
            for name in ("xz", "k1_genk", "am", "mp"):
                self.check(name, 60, k=k)

    def test_series_identities(self):
        self.check("series_identities", 120, k_max=6)

    def test_cross_oracle(self):
        self.check("crank_vector", 8)
        for name, params in (("u", {"m": 0}), ("u", {"m": 1}), ("u", {"m": 2})):
            self.assertTrue(self.engine.table(name, params, 0, 14, "both").all_match())
        for k in range(-8, 9):
            self.assertTrue(self.engine.table("NV", {"k": k}, 0, 8, "both").all_match(), f"k={k}")

    def test_bijections(self):
        for n in range(0, 13):
            for j in bijections.valid_staircases(n):
                for m in (0, 1, 2):
                    self.assertTrue(bijections.verify_bijection("sec5_psi", {"m": m, "j": j}, n).passed)
        for n in range(0, 21):
            self.assertTrue(bijections.verify_bijection("sec6_f", {}, n).passed, f"f n={n}")
            for k in (2, 3, 4):
                self.assertTrue(bijections.verify_bijection("sec6_g", {"k": k}, n).passed, f"g k={k} n={n}")


@unittest.skipUnless(FULL, "set CRANKSHAFT_FULL_ACCEPTANCE=1 for the full ranges")
class TestFullSweeps(unittest.TestCase):
    """
    The acceptance families on their full ranges
    """

    def test_all_registered_checks(self):
        config = CrankshaftConfig(properties_path=None, series_order=400)
        requests = identities.expand_requests(["all"], k_values=[1, 2, 3, 4])
        reports = identities.run_checks(requests, config)
        failed = [(r.check_name, r.params, r.counterexample) for r in reports if not r.passed]
        self.assertEqual(failed, [])

    def test_thm1_bijection(self):
        for n in range(0, 26):
            self.assertTrue(bijections.verify_bijection("thm1", {}, n).passed, f"n={n}")

    def test_staircase_triples(self):
        for n in range(0, 19):
            for j in bijections.valid_staircases(n):
                for m in (0, 1, 2):
                    report = bijections.verify_bijection("sec5_psi", {"m": m, "j": j}, n)
                    self.assertTrue(report.passed, f"n={n} j={j} m={m}")

    def test_small_part_and_tagged_maps(self):
        for n in range(0, 41):
            self.assertTrue(bijections.verify_bijection("sec6_f", {}, n).passed, f"f n={n}")
            self.assertTrue(bijections.verify_bijection("split", {}, n).passed, f"split n={n}")
            for k in (2, 3, 4):
                self.assertTrue(bijections.verify_bijection("sec6_g", {"k": k}, n).passed, f"g k={k} n={n}")


if __name__ == '__main__':
    unittest.main()
