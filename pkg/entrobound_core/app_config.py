# entrobound_core/app_config.py
import configparser
import logging
import os
from typing import Any, Dict, Optional, Type

from entrobound_core.config_defs import *

logger = logging.getLogger("entrobound.config")


class AppConfig:
    def __init__(self, config_file_path: Optional[str] = None):
        self.BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        self.CONFIG_FILE_NAME = "entrobound_config.ini"
        self.CONFIG_DIR = os.path.join(self.BASE_DIR, "config")
        self.CONFIG_FILE_PATH = config_file_path or os.path.join(self.CONFIG_DIR, self.CONFIG_FILE_NAME)
        self._config_parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        self._load_config_file()
        self._load_all_settings()

    def _load_config_file(self):
        if os.path.exists(self.CONFIG_FILE_PATH):
            self._config_parser.read(self.CONFIG_FILE_PATH, encoding="utf-8")

    def _get_config_value(self, section: str, key: str, fallback: Any, value_type: Type = str) -> Any:
        if self._config_parser.has_section(section) and self._config_parser.has_option(section, key):
            try:
                if value_type == bool:
                    return self._config_parser.getboolean(section, key)
                elif value_type == int:
                    # accept 2**26 style values written as plain integers or floats like 1e8
                    return int(float(self._config_parser.get(section, key)))
                elif value_type == float:
                    return self._config_parser.getfloat(section, key)
                return self._config_parser.get(section, key)
            except (ValueError, configparser.Error):
                return fallback
        return fallback

    def get_all_settings(self) -> Dict[str, Dict[str, str]]:
        all_settings: Dict[str, Dict[str, str]] = {}
        for section in self._config_parser.sections():
            all_settings[section] = dict(self._config_parser.items(section))
        return all_settings

    def _load_all_settings(self):
        # Logging
        self.log_enabled = self._get_config_value("Logging", "log_enabled", DEFAULT_LOG_ENABLED, bool)
        self.log_file = self._get_config_value("Logging", "log_file", DEFAULT_LOG_FILE, str)
        self.log_error_file = self._get_config_value("Logging", "log_error_file", DEFAULT_LOG_ERROR_FILE, str)
        self.log_level_str = self._get_config_value("Logging", "log_level", DEFAULT_LOG_LEVEL, str).strip().upper()
        self.log_error_level_str = self._get_config_value("Logging", "log_error_level", DEFAULT_LOG_ERROR_LEVEL, str).strip().upper()
        self.console_log_level_str = self._get_config_value("Logging", "console_log_level", DEFAULT_CONSOLE_LOG_LEVEL, str).strip().upper()
        self.log_max_bytes = self._get_config_value("Logging", "log_max_bytes", DEFAULT_LOG_MAX_BYTES, int)
        self.log_backup_count = self._get_config_value("Logging", "log_backup_count", DEFAULT_LOG_BACKUP_COUNT, int)

        # Numerics
        self.numerics = NumericsConfig(
            rtol=self._get_config_value("Numerics", "rtol", DEFAULT_RTOL, float),
            window=self._get_config_value("Numerics", "window", DEFAULT_WINDOW, int),
            tail_initial_window=self._get_config_value("Numerics", "tail_initial_window", DEFAULT_TAIL_INITIAL_WINDOW, int),
            tail_max_terms=self._get_config_value("Numerics", "tail_max_terms", DEFAULT_TAIL_MAX_TERMS, int),
            plateau_rtol=self._get_config_value("Numerics", "plateau_rtol", DEFAULT_PLATEAU_RTOL, float),
        )
        self.scan = ScanConfig(
            p_lt_q_max_k=self._get_config_value("Scan", "p_lt_q_max_k", DEFAULT_P_LT_Q_MAX_K, int),
            p_gt_q_min_k=self._get_config_value("Scan", "p_gt_q_min_k", DEFAULT_P_GT_Q_MIN_K, int),
            p_gt_q_log_factor=self._get_config_value("Scan", "p_gt_q_log_factor", DEFAULT_P_GT_Q_LOG_FACTOR, int),
            p_gt_q_max_k=self._get_config_value("Scan", "p_gt_q_max_k", DEFAULT_P_GT_Q_MAX_K, int),
        )
        self.oracle = OracleConfig(
            resolution_factor=self._get_config_value("Oracle", "resolution_factor", DEFAULT_RESOLUTION_FACTOR, float),
            bisection_budget=self._get_config_value("Oracle", "bisection_budget", DEFAULT_BISECTION_BUDGET, int),
            packing_candidates=self._get_config_value("Oracle", "packing_candidates", DEFAULT_PACKING_CANDIDATES, int),
            max_grid_points=self._get_config_value("Oracle", "max_grid_points", DEFAULT_MAX_GRID_POINTS, int),
            mc_samples=self._get_config_value("Oracle", "mc_samples", DEFAULT_MC_SAMPLES, int),
            seed=self._get_config_value("Oracle", "seed", DEFAULT_SEED, int),
        )

        # Output
        self.output_format = self._get_config_value("Output", "format", DEFAULT_OUTPUT_FORMAT, str).strip().lower()
        if self.output_format not in ("json", "csv"):
            logger.warning(f"Unknown output format '{self.output_format}' in config, using {DEFAULT_OUTPUT_FORMAT}")
            self.output_format = DEFAULT_OUTPUT_FORMAT
        self.float_digits = self._get_config_value("Output", "float_digits", DEFAULT_FLOAT_DIGITS, int)

        # Concurrency
        self.threads = self._resolve_threads(self._get_config_value("Concurrency", "threads", DEFAULT_THREADS, int))

    def _resolve_threads(self, configured: int) -> int:
        raw = os.environ.get(THREADS_ENV_VAR)
        if raw is not None:
            try:
                value = int(raw.strip())
                if value >= 1:
                    return value
            except ValueError:
                pass
            logger.warning(f"Ignoring {THREADS_ENV_VAR}={raw!r}: expected a positive integer")
        return max(1, configured)

    def rehash(self) -> bool:
        """Re-read the INI file and reload every setting."""
        try:
            self._config_parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
            self._load_config_file()
            self._load_all_settings()
            logger.info(f"Configuration reloaded from {self.CONFIG_FILE_PATH}")
            return True
        except Exception as e:
            logger.error(f"Error reloading configuration: {e}", exc_info=True)
            return False

    @property
    def log_level_int(self) -> int:
        return get_log_level_int(self.log_level_str, logging.INFO)

    @property
    def log_error_level_int(self) -> int:
        return get_log_level_int(self.log_error_level_str, logging.WARNING)

    @property
    def console_log_level_int(self) -> int:
        return get_log_level_int(self.console_log_level_str, logging.WARNING)
