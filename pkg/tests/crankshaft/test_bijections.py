"""
Unit tests for the constructive bijections and their exhaustive verifiers
"""

import unittest
import sys
import os

# Add scripts to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../scripts'))

from crankshaft import bijections, objects
from crankshaft.errors import DomainError, UsageError
from crankshaft.objects import Composition, Partition


def P(*parts):
    return Partition(tuple(parts))


def C(*parts):
    return Composition(tuple(parts))


class TestUnimodalMaps(unittest.TestCase):
    """
    Test suite for the maps behind u_0(n) = u_1(n) - u_2(n)
    """

    def test_phi_examples(self):
        self.assertEqual(bijections.thm1_phi(C(1, 2, 2, 1)), C(1, 2, 1, 1))
        self.assertEqual(bijections.thm1_phi(C(3, 3)), C(3, 2))
        self.assertEqual(bijections.thm1_phi(C(2, 2, 1, 1)), C(2, 1, 1, 1))

    def test_phi_inverse(self):
        self.assertEqual(bijections.thm1_phi_inverse(C(1, 2, 1, 1)), C(1, 2, 2, 1))
        with self.assertRaises(DomainError):
            bijections.thm1_phi_inverse(C(4))

    def test_phi_domain(self):
        with self.assertRaises(DomainError):
            bijections.thm1_phi(C(1, 1))
        with self.assertRaises(DomainError):
            bijections.thm1_phi(C(3, 1))

    def test_psi_examples(self):
        self.assertEqual(bijections.thm1_psi(C(5)), C(4))
        self.assertEqual(bijections.thm1_psi(C(1, 3, 1)), C(1, 2, 1))
        self.assertEqual(bijections.thm1_psi_inverse(C(1, 2, 1)), C(1, 3, 1))

    def test_psi_rejects_phi_image(self):
        with self.assertRaises(DomainError):
            bijections.thm1_psi(C(1, 2, 1, 1))

    def test_membership(self):
        self.assertTrue(bijections.in_unimodal_family(C(2, 2), 2, 2))
        self.assertFalse(bijections.in_unimodal_family(C(2, 2), 1, 3))
        self.assertTrue(bijections.in_unimodal_family(C(1, 3, 1), 0, 5))


class TestFranklin(unittest.TestCase):
    """
    Test suite for Franklin's involution
    """

    def test_staircases_are_fixed(self):
        for parts in ((3, 2), (1,), (2,), (5, 4, 3), (4, 3)):
            lam = P(*parts)
            self.assertEqual(bijections.franklin(lam), lam, f"{parts}")

    def test_moves(self):
        self.assertEqual(bijections.franklin(P(4, 1)), P(5))
        self.assertEqual(bijections.franklin(P(5)), P(4, 1))
        self.assertEqual(bijections.franklin(P(2, 1)), P(3))
        self.assertEqual(bijections.franklin(P(3)), P(2, 1))

    def test_empty_partition(self):
        self.assertEqual(bijections.franklin(P()), P())

    def test_needs_distinct_parts(self):
        with self.assertRaises(DomainError):
            bijections.franklin(P(2, 2))


class TestStaircaseTriples(unittest.TestCase):
    """
    Test suite for gluing (pi2, pi3) into unimodal compositions
    """

    def test_m0(self):
        c = bijections.sec5_psi(1, P(2, 1), P(1), 0)
        self.assertEqual(c, C(1, 2, 1))
        self.assertEqual(bijections.sec5_psi_inverse(c, 0), (P(2, 1), P(1)))

    def test_m1(self):
        c = bijections.sec5_psi(0, P(1), P(1), 1)
        self.assertEqual(c, C(1, 2))
        self.assertEqual(bijections.sec5_psi_inverse(c, 1), (P(1), P(1)))

    def test_m2(self):
        c = bijections.sec5_psi(-1, P(1), P(1), 2)
        self.assertEqual(c, C(2, 2))
        self.assertEqual(bijections.sec5_psi_inverse(c, 2), (P(1), P(1)))

    def test_length_relation(self):
        with self.assertRaises(DomainError):
            bijections.sec5_psi(1, P(1), P(), 2)
        with self.assertRaises(DomainError):
            bijections.sec5_psi(1, P(1), P(1), 0)
        with self.assertRaises(UsageError):
            bijections.sec5_psi(1, P(1), P(), 3)

    def test_inverse_multiplicity(self):
        with self.assertRaises(DomainError):
            bijections.sec5_psi_inverse(C(2, 2), 1)
        with self.assertRaises(DomainError):
            bijections.sec5_psi_inverse(C(1, 2), 2)


class TestSmallPartMaps(unittest.TestCase):
    """
    Test suite for the P*_{1,2} fold and the smallest-part split
    """

    def test_fold_three_ones(self):
        self.assertEqual(bijections.sec6_f(P(3, 2, 1, 1, 1)), P(3, 2, 2, 1))
        self.assertEqual(bijections.sec6_f_inverse(P(3, 2, 2, 1)), P(3, 2, 1, 1, 1))

    def test_fold_through_b(self):
        self.assertEqual(bijections.sec6_f(P(4, 2, 2, 1)), P(4, 4, 1))
        self.assertEqual(bijections.sec6_f_inverse(P(4, 4, 1)), P(4, 2, 2, 1))

    def test_fold_worked_examples(self):
        self.assertEqual(bijections.sec6_f(P(8, 8, 5, 3, 2, 2, 1, 1, 1, 1)), P(8, 8, 5, 3, 2, 2, 2, 1, 1))
        self.assertEqual(bijections.sec6_f(P(8, 8, 5, 5, 2, 2, 2, 1, 1)), P(8, 8, 5, 5, 5, 1, 1, 1))
        self.assertEqual(bijections.sec6_f_inverse(P(8, 8, 5, 3, 2, 2, 2, 1, 1)), P(8, 8, 5, 3, 2, 2, 1, 1, 1, 1))
        self.assertEqual(bijections.sec6_f_inverse(P(8, 8, 5, 5, 5, 1, 1, 1)), P(8, 8, 5, 5, 2, 2, 2, 1, 1))

    def test_fold_domain(self):
        self.assertFalse(bijections.is_p12_star(P(5, 2, 1)))
        with self.assertRaises(DomainError):
            bijections.sec6_f(P(5, 2, 1))
        with self.assertRaises(DomainError):
            bijections.sec6_f_inverse(P(3, 1))

    def test_split(self):
        self.assertEqual(bijections.split_smallest_part(P(5, 3)), P(5, 2, 1))
        self.assertEqual(bijections.split_smallest_part(P(4)), P(2, 1, 1))
        self.assertEqual(bijections.split_smallest_part_inverse(P(5, 2, 1)), P(5, 3))
        self.assertEqual(bijections.split_smallest_part_inverse(P(2, 1, 1)), P(4))

    def test_split_domain(self):
        with self.assertRaises(DomainError):
            bijections.split_smallest_part(P(2, 1))
        with self.assertRaises(DomainError):
            bijections.split_smallest_part_inverse(P(3, 1))


class TestTaggedMap(unittest.TestCase):
    """
    Test suite for the map onto the two copies of P~
    """

    def test_source_a(self):
        self.assertEqual(bijections.sec6_g(2, P(), "A"), (P(2, 2, 1), "Pk-1"))
        self.assertEqual(bijections.sec6_g(2, P(1), "A"), (P(2, 2, 1, 1), "Pk-1"))
        self.assertEqual(bijections.sec6_g_inverse(2, P(2, 2, 1), "Pk-1"), (P(), "A"))

    def test_source_b(self):
        self.assertEqual(bijections.sec6_g(2, P(), "B"), (P(3, 3, 1), "Pk-1"))
        self.assertEqual(bijections.sec6_g(2, P(3, 2), "B"), (P(3, 3, 3, 2, 1), "Pk"))
        self.assertEqual(bijections.sec6_g_inverse(2, P(3, 3, 1), "Pk-1"), (P(), "B"))
        self.assertEqual(bijections.sec6_g_inverse(2, P(3, 3, 3, 2, 1), "Pk"), (P(3, 2), "B"))

    def test_p_tilde_membership(self):
        self.assertTrue(bijections.is_p_tilde(P(3, 3, 3, 2, 1), 2))
        self.assertFalse(bijections.is_p_tilde(P(3, 3, 2, 1), 2))
        self.assertFalse(bijections.is_p_tilde(P(1, 1), 1))

    def test_bad_arguments(self):
        with self.assertRaises(UsageError):
            bijections.sec6_g(1, P(), "A")
        with self.assertRaises(UsageError):
            bijections.sec6_g(2, P(), "C")
        with self.assertRaises(DomainError):
            bijections.sec6_g_inverse(2, P(3, 1), "Pk")


class TestVerifyBijection(unittest.TestCase):
    """
    Test suite for exhaustive verification
    """

    def test_thm1(self):
        witnesses = []
        report = bijections.verify_bijection("thm1", {}, 4, witnesses.append)
        self.assertTrue(report.passed)
        self.assertEqual(report.check_name, "biject_thm1")
        self.assertEqual(report.details["u0"], 8)
        self.assertEqual(len(witnesses), 12)
        self.assertTrue(all(w.round_trip_ok for w in witnesses))

    def test_thm1_range(self):
        for n in range(0, 11):
            self.assertTrue(bijections.verify_bijection("thm1", {}, n).passed, f"n={n}")

    def test_franklin_fixed_points(self):
        report = bijections.verify_bijection("franklin", {}, 12)
        self.assertTrue(report.passed)
        self.assertEqual(report.details["fixed_points"], [[5, 4, 3]])
        self.assertEqual(report.details["signed_count"], -1)
        report = bijections.verify_bijection("franklin", {}, 7)
        self.assertEqual(report.details["fixed_points"], [[4, 3]])
        self.assertEqual(report.details["signed_count"], 1)

    def test_franklin_fixed_points_are_staircases(self):
        """
        Test that the only fixed point at size j(3j-1)/2 is G_j, with sign (-1)^j
        """
        for j in range(-5, 6):
            if j == 0:
                continue
            n = j * (3 * j - 1) // 2
            report = bijections.verify_bijection("franklin", {}, n)
            self.assertTrue(report.passed, f"j={j}: {report.counterexample}")
            self.assertEqual(report.details["fixed_points"], [objects.staircase(j).to_json()], f"j={j}")
            self.assertEqual(report.details["signed_count"], -1 if j % 2 else 1, f"j={j}")

    def test_franklin_no_fixed_points_off_pentagonal_sizes(self):
        for n in (3, 4, 6, 8, 9, 10, 11):
            report = bijections.verify_bijection("franklin", {}, n)
            self.assertEqual(report.details["fixed_points"], [], f"n={n}")
            self.assertEqual(report.details["signed_count"], 0, f"n={n}")

    def test_franklin_range(self):
        for n in range(0, 25):
            self.assertTrue(bijections.verify_bijection("franklin", {}, n).passed, f"n={n}")

    def test_staircase_triples(self):
        for n in range(0, 9):
            for j in bijections.valid_staircases(n):
                for m in (0, 1, 2):
                    report = bijections.verify_bijection("sec5_psi", {"m": m, "j": j}, n)
                    self.assertTrue(report.passed, f"n={n} j={j} m={m}: {report.counterexample}")

    def test_staircase_too_large(self):
        with self.assertRaises(UsageError):
            bijections.verify_bijection("sec5_psi", {"m": 0, "j": 3}, 5)

    def test_fold(self):
        for n in range(0, 16):
            report = bijections.verify_bijection("sec6_f", {}, n)
            self.assertTrue(report.passed, f"n={n}: {report.counterexample}")

    def test_split(self):
        for n in range(0, 16):
            report = bijections.verify_bijection("split", {}, n)
            self.assertTrue(report.passed, f"n={n}: {report.counterexample}")

    def test_tagged_map(self):
        for k in (2, 3):
            for n in range(0, 19):
                report = bijections.verify_bijection("sec6_g", {"k": k}, n)
                self.assertTrue(report.passed, f"k={k} n={n}: {report.counterexample}")

    def test_witness_json(self):
        witnesses = []
        bijections.verify_bijection("sec6_g", {"k": 2}, 5, witnesses.append)
        self.assertEqual(witnesses[0].to_json(), {
            "map": "sec6_g", "params": {"n": 5, "k": 2},
            "input": [[], "A"], "output": [[2, 2, 1], "Pk-1"], "round_trip_ok": True,
        })

    def test_unknown_map(self):
        with self.assertRaises(UsageError):
            bijections.verify_bijection("rank", {}, 4)

    def test_missing_parameter(self):
        with self.assertRaises(UsageError):
            bijections.verify_bijection("sec6_g", {}, 4)

    def test_franklin_reduction(self):
        for n in range(0, 8):
            for k in (-1, 0, 1, 2):
                report = bijections.franklin_reduction(n, k)
                self.assertTrue(report.passed, f"n={n} k={k}: {report.counterexample}")


if __name__ == '__main__':
    unittest.main()
