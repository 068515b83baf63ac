import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

VERIFY_ALL = ["verify", "all", "--depth", "12", "--json"]


def run_cli(args, hash_seed="0", timeout=600):
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    return subprocess.run([sys.executable, "-m", "uqsl2", *args], capture_output=True,
                          env=env, timeout=timeout)


@pytest.fixture(scope="session")
def verify_all_run():
    """One full `verify all --depth 12 --json` run in a fresh interpreter."""
    proc = run_cli(VERIFY_ALL, hash_seed="1")
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


@pytest.fixture(scope="session")
def verify_all_reports(verify_all_run):
    return json.loads(verify_all_run)


@pytest.fixture(scope="session")
def reports_by_id(verify_all_reports):
    out = {}
    for r in verify_all_reports:
        out.setdefault(r["statement_id"], []).append(r)
    return out


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record and print a one-line verdict for an acceptance criterion, then assert it."""
    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
