"""
Unit tests for crankshaft run configuration
"""

import unittest
import tempfile
import json
import os
import sys
from unittest import mock

# Add scripts to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../scripts'))

from crankshaft.config import CrankshaftConfig, THREADS_ENV
from crankshaft.errors import UsageError


class TestCrankshaftConfig(unittest.TestCase):
    """
    Test suite for CrankshaftConfig class
    """

    def setUp(self):
        """
        Set up test fixtures with temporary files
        """
        self.temp_dir = tempfile.mkdtemp()
        self.conf_json_path = os.path.join(self.temp_dir, 'conf.json')
        self.props_path = os.path.join(self.temp_dir, 'crankshaft.properties')

        self.test_conf = {
            "general": {
                "run_name": "test_run"
            },
            "enumeration": {
                "max_composition_n": 18,
                "max_vector_n": 8,
                "max_partition_n": 25
            },
            "series": {
                "order": 120
            },
            "verify": {
                "threads": 3,
                "strictness": "assert"
            },
            "output": {
                "directory": "test_outputs",
                "report": "report.json"
            }
        }

        with open(self.conf_json_path, 'w') as f:
            json.dump(self.test_conf, f)

        with open(self.props_path, 'w') as f:
            f.write("[crankshaft]\n")
            f.write("crankshaft.threads=2\n")
            f.write("crankshaft.log_level=debug\n")

        # keep the environment out of the worker count
        patcher = mock.patch.dict(os.environ, {}, clear=False)
        patcher.start()
        os.environ.pop(THREADS_ENV, None)
        self.addCleanup(patcher.stop)

    def tearDown(self):
        """
        Clean up temporary files
        """
        import shutil
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def test_defaults(self):
        """
        Test built-in defaults when no files are given
        """
        config = CrankshaftConfig(properties_path=os.path.join(self.temp_dir, 'missing.properties'))

        self.assertEqual(config.composition_cutoff, 30)
        self.assertEqual(config.vector_cutoff, 14)
        self.assertEqual(config.partition_cutoff, 40)
        self.assertEqual(config.series_order, 300)
        self.assertEqual(config.threads, 1)
        self.assertEqual(config.strictness, "report")
        self.assertEqual(config.log_level, "INFO")
        self.assertEqual(config.output_dir, "outputs")

    def test_load_conf_json(self):
        config = CrankshaftConfig(self.conf_json_path, None)

        self.assertEqual(config.run_name, "test_run")
        self.assertEqual(config.composition_cutoff, 18)
        self.assertEqual(config.vector_cutoff, 8)
        self.assertEqual(config.partition_cutoff, 25)
        self.assertEqual(config.series_order, 120)
        self.assertEqual(config.threads, 3)
        self.assertEqual(config.strictness, "assert")

    def test_load_properties(self):
        """
        Test that properties override conf.json for threads and set the log level
        """
        config = CrankshaftConfig(self.conf_json_path, self.props_path)

        self.assertEqual(config.threads, 2)
        self.assertEqual(config.log_level, "DEBUG")

    def test_environment_overrides_properties(self):
        with mock.patch.dict(os.environ, {THREADS_ENV: "5"}):
            config = CrankshaftConfig(self.conf_json_path, self.props_path)
        self.assertEqual(config.threads, 5)

    def test_explicit_overrides(self):
        config = CrankshaftConfig(self.conf_json_path, self.props_path, series_order=40,
                                  threads=1, strictness="report", output_dir=self.temp_dir)

        self.assertEqual(config.series_order, 40)
        self.assertEqual(config.threads, 1)
        self.assertEqual(config.strictness, "report")
        self.assertEqual(config.output_dir, self.temp_dir)

    def test_get_output_path(self):
        config = CrankshaftConfig(self.conf_json_path, None)

        self.assertEqual(config.get_output_path('report'), os.path.join("test_outputs", "test_run", "report.json"))
        self.assertEqual(config.get_output_path('table', 'table.csv'),
                         os.path.join("test_outputs", "test_run", "table.csv"))

    def test_missing_conf_json(self):
        config = CrankshaftConfig(os.path.join(self.temp_dir, 'absent.json'), None)
        self.assertEqual(config.run_name, "crankshaft")

    def test_malformed_conf_json(self):
        with open(self.conf_json_path, 'w') as f:
            f.write("{not json")
        with self.assertRaises(UsageError):
            CrankshaftConfig(self.conf_json_path, None)

    def test_validation(self):
        with self.assertRaises(UsageError):
            CrankshaftConfig(properties_path=None, strictness="loose")
        with self.assertRaises(UsageError):
            CrankshaftConfig(properties_path=None, series_order=-1)
        with self.assertRaises(UsageError):
            CrankshaftConfig(properties_path=None, threads=0)
        with self.assertRaises(UsageError):
            CrankshaftConfig(properties_path=None, partition_cutoff=-1)

    def test_zero_series_order(self):
        config = CrankshaftConfig(properties_path=None, series_order=0)
        self.assertEqual(config.series_order, 0)

    def test_non_integer_threads(self):
        """
        Test that unparseable worker counts are usage errors
        """
        with mock.patch.dict(os.environ, {THREADS_ENV: "abc"}):
            with self.assertRaises(UsageError):
                CrankshaftConfig(self.conf_json_path, self.props_path)

        with open(self.props_path, 'w') as f:
            f.write("[crankshaft]\n")
            f.write("crankshaft.threads=many\n")
        with self.assertRaises(UsageError):
            CrankshaftConfig(self.conf_json_path, self.props_path)

    def test_log_summary(self):
        config = CrankshaftConfig(self.conf_json_path, None)
        with self.assertLogs('crankshaft.config', level='INFO') as logs:
            config.log_summary()
        self.assertTrue(any("Series order: 120" in line for line in logs.output))


if __name__ == '__main__':
    unittest.main()
