import csv
import shutil
import subprocess

import pytest

CAB = shutil.which("cabandits")


def cab(*args):
    """Invoke the simulation CLI; the CSV files are the only interface."""
    assert CAB, "tests need the cabandits CLI on PATH to generate input CSVs"
    proc = subprocess.run(
        [CAB] + [str(a) for a in args], capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise RuntimeError(f"cabandits {' '.join(map(str, args))} failed:\n{proc.stderr}")


def read_csv(path):
    """Plain header/rows reader, independent of the package's own parser."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    return rows[0], rows[1:]


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """Input CSVs, generated once per session through the simulation CLI."""
    d = tmp_path_factory.mktemp("csvs")
    cab("rates", "--out-dir", d / "rates")
    cab(
        "rates", "--m", "0.5,0.6666666666666666,1.0",
        "--alphas", "log:0.01:1000:60", "--out-dir", d / "rates3",
    )
    cab("lowerbound", "--B", 1024, "--delta", 0.1, "--cells", 2, "--out-dir", d / "family")
    cab(
        "medzo", "--env", "f", "--T", 100000, "--runs", 20, "--seed", 7,
        "--dump-regimes", "--out-dir", d / "medzo",
    )
    cab("appendix-e", "--T", 100000, "--runs", 20, "--seed", 20260825, "--out-dir", d / "suite")
    return d
