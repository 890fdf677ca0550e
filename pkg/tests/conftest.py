import json
import os
from typing import List

import pytest

import entrobound
from entrobound_core.app_config import AppConfig

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
TEST_CONFIG_DIR = os.path.join(REPO_ROOT, "test_configs")
TEST_CONFIG = os.path.join(TEST_CONFIG_DIR, "entrobound_test.ini")
CSV_TEST_CONFIG = os.path.join(TEST_CONFIG_DIR, "entrobound_csv_test.ini")
BAD_VALUES_CONFIG = os.path.join(TEST_CONFIG_DIR, "entrobound_bad_values_test.ini")


@pytest.fixture(autouse=True)
def _no_thread_override(monkeypatch):
    monkeypatch.delenv("ENTROBOUND_THREADS", raising=False)


@pytest.fixture
def app_config() -> AppConfig:
    return AppConfig(config_file_path=TEST_CONFIG)


class CliResult:
    def __init__(self, exit_code: int, out: str, err: str):
        self.exit_code = exit_code
        self.out = out
        self.err = err

    @property
    def report(self) -> dict:
        return json.loads(self.out)

    @property
    def rows(self) -> List[dict]:
        return self.report["rows"]


@pytest.fixture
def run_cli(capsys):
    """Runs entrobound.main in-process against a test config; argparse exits are returned as codes."""

    def run(*args: str, config: str = TEST_CONFIG) -> CliResult:
        try:
            code = entrobound.main(["--config", config, *args])
        except SystemExit as e:
            code = e.code if isinstance(e.code, int) else 1
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return run


@pytest.fixture
def unit_weight_file(tmp_path) -> str:
    path = tmp_path / "unit1.txt"
    path.write_text("#tail zero\n1\n", encoding="utf-8")
    return str(path)
