import os
import pathlib

import pytest

ROWS = [
    # x, u, v — a small doubly truncated sample (u <= x <= v on every row)
    (0.31, 0.05, 0.62),
    (0.12, -0.20, 0.33),
    (0.55, 0.28, 0.90),
    (0.47, 0.11, 0.75),
    (0.83, 0.60, 1.40),
    (0.22, -0.05, 0.51),
    (0.64, 0.30, 1.02),
    (0.09, -0.33, 0.18),
    (0.71, 0.44, 1.11),
    (0.38, 0.02, 0.66),
    (0.93, 0.58, 1.21),
    (0.26, -0.11, 0.42),
]


@pytest.fixture
def sample_rows():
    return list(ROWS)


@pytest.fixture
def sample_csv(tmp_path, sample_rows):
    path = tmp_path / "sample.csv"
    lines = ["x,u,v"]
    lines += [f"{x},{u},{v}" for x, u, v in sample_rows]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def cli_path():
    path = os.environ.get("DTBIAS_CLI")
    if not path or not pathlib.Path(path).exists():
        pytest.skip("DTBIAS_CLI does not point at the built binary")
    return path
