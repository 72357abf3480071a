"""
Unit tests for the statistics engine and its two backends
"""

import unittest
import json
import sys
import os
from unittest import mock

# Add scripts to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../scripts'))

from crankshaft import qseries
from crankshaft.config import CrankshaftConfig
from crankshaft.errors import BackendMismatchError, UsageError
from crankshaft.statistics import StatisticsEngine, StatTable


def small_engine(**overrides):
    settings = dict(composition_cutoff=12, vector_cutoff=6, partition_cutoff=20, series_order=60)
    settings.update(overrides)
    return StatisticsEngine(CrankshaftConfig(properties_path=None, **settings))


class TestGoldenValues(unittest.TestCase):
    """
    Test suite for known exact values
    """

    @classmethod
    def setUpClass(cls):
        cls.engine = small_engine()

    def test_partition_numbers(self):
        self.assertEqual(self.engine.p(5), 7)
        self.assertEqual(self.engine.p(-3), 0)
        self.assertEqual(self.engine.p(0), 1)
        self.assertEqual(self.engine.p(20), 627)
        self.assertEqual(self.engine.p(100), 190569292)

    def test_unimodal_counts(self):
        self.assertEqual(self.engine.u(0, 4), 8)
        self.assertEqual(self.engine.u(1, 4), 12)
        self.assertEqual(self.engine.u(2, 4), 4)
        self.assertEqual(self.engine.u(0, 5), 15)

    def test_unimodal_conventions(self):
        self.assertEqual(self.engine.u(0, 0), 0)
        self.assertEqual(self.engine.u(1, 0), 1)
        self.assertEqual(self.engine.u(2, 0), 1)
        self.assertEqual(self.engine.u(1, -2), 0)

    def test_crank_counts(self):
        self.assertEqual(self.engine.crank_count(0, 5), 1)
        self.assertEqual(sum(self.engine.crank_count(k, 5) for k in range(1, 6)), 3)
        self.assertEqual(sum(self.engine.crank_count(k, 5) for k in range(-5, 6)), 7)
        self.assertEqual(self.engine.crank_count(-1, 1), 1)

    def test_crank_count_needs_positive_n(self):
        with self.assertRaises(UsageError):
            self.engine.crank_count(0, 0)

    def test_cumulative_crank_counts(self):
        self.assertEqual(self.engine.C(0, 5), 3)
        self.assertEqual(self.engine.C(1, 5), 4)
        self.assertEqual([self.engine.C(m, 1) for m in (0, 1, 2)], [1, 0, -1])
        self.assertEqual([self.engine.C(m, 0) for m in (0, 1, 2)], [0, 1, 1])
        self.assertEqual(self.engine.C(2, -1), 0)

    def test_m_k(self):
        self.assertEqual(self.engine.M(3, 18), 3)
        self.assertEqual(self.engine.M(1, 5), 2)
        self.assertEqual(self.engine.M(2, 0), 0)

    def test_p_tilde(self):
        self.assertEqual(self.engine.P_tilde(2, 17), 9)
        self.assertEqual(self.engine.P_tilde(1, 5), 1)
        self.assertEqual(self.engine.P_tilde(1, 3), 0)

    def test_vector_counts(self):
        self.assertEqual(self.engine.N_V(0, 0), 1)
        self.assertEqual([self.engine.N_V(k, 1) for k in (-1, 0, 1)], [1, -1, 1])
        for k in range(-5, 6):
            self.assertEqual(self.engine.N_V(k, 5), self.engine.crank_count(k, 5), f"k={k}")

    def test_missing_k_count(self):
        # for k = 1 both sides are the partitions without a part 1
        for n in range(1, 12):
            self.assertEqual(self.engine.M_via_missing_k(1, n), self.engine.M(1, n))

    def test_missing_k_count_has_no_series_backend(self):
        self.assertEqual(self.engine.M_via_missing_k(1, 5, backend="enum"), 2)
        for backend in ("series", "both"):
            with self.assertRaises(UsageError):
                self.engine.M_via_missing_k(1, 5, backend=backend)
        with self.assertRaises(UsageError):
            self.engine.table("Mmissing", {"k": 1}, 0, 5, backend="both")


class TestEngineProperties(unittest.TestCase):
    """
    Test suite for identities between statistics and backend agreement
    """

    @classmethod
    def setUpClass(cls):
        cls.engine = small_engine()

    def test_c2_is_difference(self):
        for n in range(0, 30):
            self.assertEqual(self.engine.C(2, n), self.engine.C(1, n) - self.engine.C(0, n), f"n={n}")

    def test_u0_is_difference(self):
        for n in range(0, 16):
            self.assertEqual(self.engine.u(0, n), self.engine.u(1, n) - self.engine.u(2, n), f"n={n}")

    def test_backends_agree(self):
        """
        Test that both backends give identical tables on the overlap
        """
        for name, params, upper in (("u", {"m": 0}, 12), ("u", {"m": 2}, 12), ("C", {"m": 1}, 20),
                                    ("M", {"k": 2}, 20), ("Ptilde", {"k": 1}, 20), ("NV", {"k": 1}, 6),
                                    ("crank", {"k": -2}, 20), ("p", {}, 20)):
            table = self.engine.table(name, params, 0, upper, backend="both")
            self.assertTrue(table.all_match(), f"{name} {params}")

    def test_mismatch_raises(self):
        engine = small_engine()
        broken = qseries.TruncatedSeries.zero(60)
        with mock.patch.object(qseries, 'u_gf', return_value=broken):
            with self.assertRaises(BackendMismatchError) as ctx:
                engine.u(0, 4, backend="both")
        self.assertEqual(ctx.exception.enum_value, 8)
        self.assertEqual(ctx.exception.series_value, 0)

    def test_auto_uses_series_past_cutoff(self):
        engine = small_engine(composition_cutoff=3)
        with mock.patch('crankshaft.objects.unimodal_family') as family:
            self.assertEqual(engine.u(0, 10), qseries.u_gf(0, 10)[10])
            family.assert_not_called()

    def test_unknown_backend(self):
        with self.assertRaises(UsageError):
            self.engine.u(0, 4, backend="guess")

    def test_bad_parameters(self):
        with self.assertRaises(UsageError):
            self.engine.u(3, 4)
        with self.assertRaises(UsageError):
            self.engine.M(0, 4)
        with self.assertRaises(UsageError):
            self.engine.P_tilde(0, 4)


class TestStatTable(unittest.TestCase):
    """
    Test suite for table export
    """

    def setUp(self):
        self.engine = small_engine()

    def test_csv(self):
        table = self.engine.table("u", {"m": 0}, 0, 5)
        lines = table.to_csv().splitlines()
        self.assertEqual(lines[0], "n,value")
        self.assertEqual(lines[5], "4,8")
        self.assertEqual(len(lines), 7)

    def test_csv_with_both_backends(self):
        table = self.engine.table("C", {"m": 1}, 1, 5, backend="both")
        lines = table.to_csv().splitlines()
        self.assertEqual(lines[0], "n,enum,series,match")
        self.assertEqual(lines[-1], "5,4,4,true")

    def test_json(self):
        table = self.engine.table("Ptilde", {"k": 2}, 15, 17)
        document = json.loads(table.dumps())
        self.assertEqual(document["name"], "Ptilde")
        self.assertEqual(document["params"], {"k": 2})
        self.assertEqual(document["rows"][-1], {"n": 17, "value": "9"})

    def test_crank_table_starts_at_one(self):
        table = self.engine.table("crank", {"k": 0}, 0, 5)
        self.assertEqual(min(table.values), 1)
        self.assertEqual(table.values[5], 1)

    def test_unknown_statistic(self):
        with self.assertRaises(UsageError):
            self.engine.table("rank", {}, 0, 5)

    def test_missing_parameter(self):
        with self.assertRaises(UsageError):
            self.engine.table("u", {}, 0, 5)

    def test_empty_range(self):
        with self.assertRaises(UsageError):
            self.engine.table("p", {}, 5, 4)

    def test_table_object(self):
        table = StatTable("p", {}, {0: 1, 1: 1}, "enum")
        self.assertEqual(table.rows(), [{"n": 0, "value": 1}, {"n": 1, "value": 1}])
        self.assertTrue(table.all_match())


if __name__ == '__main__':
    unittest.main()
