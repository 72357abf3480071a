"""
Configuration management for crankshaft runs
"""

import json
import logging
import os
from configparser import ConfigParser
from typing import Dict, Optional

from crankshaft.errors import UsageError

logger = logging.getLogger(__name__)

THREADS_ENV = "CRANKSHAFT_THREADS"
STRICTNESS_MODES = ("report", "assert")

DEFAULT_PROPERTIES = {
    'crankshaft.log_level': 'INFO',
}


class CrankshaftConfig:
    """
    Manages configuration for statistic tables, identity checks and bijection runs
    """

    def __init__(self, conf_json_path: Optional[str] = None,
                 properties_path: str = "crankshaft.properties",
                 composition_cutoff: int = None, vector_cutoff: int = None,
                 partition_cutoff: int = None, series_order: int = None,
                 threads: int = None, strictness: str = None, output_dir: str = None):
        """
        Initialize configuration

        Args:
            conf_json_path: Path to conf.json (optional, defaults apply when absent)
            properties_path: Path to crankshaft.properties (optional)
            composition_cutoff: Override largest n enumerated for compositions
            vector_cutoff: Override largest n enumerated for vector partitions
            partition_cutoff: Override largest n enumerated for partition scans
            series_order: Override default truncation order
            threads: Override worker count
            strictness: Override strictness of the cor2 positivity claim ("report" or "assert")
            output_dir: Override output directory
        """
        self.conf = self._load_conf_json(conf_json_path)
        self.props = self._load_properties(properties_path)

        general_conf = self.conf.get('general', {})
        enum_conf = self.conf.get('enumeration', {})
        series_conf = self.conf.get('series', {})
        verify_conf = self.conf.get('verify', {})
        self.output_conf = self.conf.get('output', {})

        self.run_name = general_conf.get('run_name', 'crankshaft')

        # Enumeration cutoffs
        self.composition_cutoff = _pick(composition_cutoff, enum_conf.get('max_composition_n'), 30)
        self.vector_cutoff = _pick(vector_cutoff, enum_conf.get('max_vector_n'), 14)
        self.partition_cutoff = _pick(partition_cutoff, enum_conf.get('max_partition_n'), 40)

        self.series_order = _pick(series_order, series_conf.get('order'), 300)

        # Worker count: explicit > environment > properties > conf.json
        env_threads = os.environ.get(THREADS_ENV)
        raw_threads = _pick(threads, env_threads, self.props.get('crankshaft.threads'),
                            verify_conf.get('threads'), 1)
        try:
            self.threads = int(raw_threads)
        except (TypeError, ValueError) as e:
            raise UsageError(f"threads must be an integer, got {raw_threads!r}") from e
        self.strictness = _pick(strictness, verify_conf.get('strictness'), 'report')
        self.log_level = self.props.get('crankshaft.log_level', 'INFO').upper()

        self.output_dir = _pick(output_dir, self.output_conf.get('directory'), 'outputs')

        self._validate()

        logger.debug(f"Configuration loaded for run {self.run_name}")

    def _load_conf_json(self, conf_json_path: Optional[str]) -> Dict:
        """
        Load run configuration from conf.json

        Args:
            conf_json_path: Path to conf.json or None

        Returns:
            Parsed configuration dictionary (empty when no file is given)
        """
        if conf_json_path is None:
            return {}
        if not os.path.exists(conf_json_path):
            logger.warning(f"Configuration file not found: {conf_json_path}, using defaults")
            return {}
        try:
            with open(conf_json_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise UsageError(f"Malformed configuration file {conf_json_path}: {e}") from e

    def _load_properties(self, properties_file: str) -> Dict:
        """
        Load runtime properties from a properties file

        Args:
            properties_file: Path to properties file

        Returns:
            Dictionary of properties
        """
        config = ConfigParser()

        if properties_file and os.path.exists(properties_file):
            config.read(properties_file)
            props = {}

            # Read from all sections
            for section in config.sections():
                for key, value in config.items(section):
                    props[key] = value

            if config.defaults():
                props.update(dict(config.defaults()))

            logger.info(f"Loaded crankshaft properties from {properties_file}")
            return props

        return dict(DEFAULT_PROPERTIES)

    def _validate(self):
        for name in ('composition_cutoff', 'vector_cutoff', 'partition_cutoff'):
            value = int(getattr(self, name))
            if value < 0:
                raise UsageError(f"{name} must be non-negative, got {value}")
            setattr(self, name, value)
        self.series_order = int(self.series_order)
        if self.series_order < 0:
            raise UsageError(f"series order must be non-negative, got {self.series_order}")
        if self.threads < 1:
            raise UsageError(f"threads must be at least 1, got {self.threads}")
        if self.strictness not in STRICTNESS_MODES:
            raise UsageError(f"strictness must be one of {STRICTNESS_MODES}, got {self.strictness!r}")

    def get_output_path(self, key: str, default: str = None) -> str:
        """
        Get full path to an output file

        Args:
            key: Key from conf.json output section (e.g., 'table', 'report')
            default: File name used when the key is not configured

        Returns:
            Full path to the output file
        """
        filename = self.output_conf.get(key, default or key)
        return os.path.join(self.output_dir, self.run_name, filename)

    def log_summary(self):
        """
        Log configuration summary
        """
        logger.info("=" * 60)
        logger.info("crankshaft Configuration")
        logger.info("=" * 60)
        logger.info(f"Run Name: {self.run_name}")
        logger.info(f"Composition cutoff: {self.composition_cutoff}")
        logger.info(f"Vector partition cutoff: {self.vector_cutoff}")
        logger.info(f"Partition scan cutoff: {self.partition_cutoff}")
        logger.info(f"Series order: {self.series_order}")
        logger.info(f"Threads: {self.threads}")
        logger.info(f"Strictness: {self.strictness}")
        logger.info(f"Output Directory: {self.output_dir}")
        logger.info("=" * 60)


def _pick(*candidates):
    """
    Return the first candidate that is not None
    """
    for value in candidates:
        if value is not None:
            return value
    return None
