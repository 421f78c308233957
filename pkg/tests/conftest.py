import numpy as np
import pytest
from hypothesis import settings

from adjspec.matpoly import exact_matrix, to_approx

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

EX1_ROWS = [[1, -1, 1], [-1, 1, -1], [1, -1, 1]]
EX2_ROWS = [[0, 1, 0, 0], [11, 6, -4, -4], [22, 15, -8, -9], [-3, -2, 1, 2]]

EX1_P0 = [["2/3", "1/3", "-1/3"], ["1/3", "2/3", "1/3"], ["-1/3", "1/3", "2/3"]]
EX1_P3 = [["1/3", "-1/3", "1/3"], ["-1/3", "1/3", "-1/3"], ["1/3", "-1/3", "1/3"]]
EX2_P1 = [[3, 2, -1, -1], [3, 2, -1, -1], [12, 8, -4, -5], [0, 0, 0, 1]]
EX2_PM1 = [[-2, -2, 1, 1], [-3, -1, 1, 1], [-12, -8, 5, 5], [0, 0, 0, 0]]
EX2_N1P1 = [[0, 0, 0, 0], [0, 0, 0, 0], [3, 2, -1, -1], [-3, -2, 1, 1]]
EX2_NM1PM1 = [[-5, -3, 2, 2], [5, 3, -2, -2], [-5, -3, 2, 2], [0, 0, 0, 0]]


def ex2_exp_closed_form():
    e = np.e
    ch = np.cosh(1.0)
    return np.array(
        [
            [-7 / e + 3 * e, -5 / e + 2 * e, -e + 3 / e, -e + 3 / e],
            [2 / e + 3 * e, 4 * ch, -2 * ch, -2 * ch],
            [-17 / e + 15 * e, -11 / e + 10 * e, -5 * e + 7 / e, -6 * e + 7 / e],
            [-3 * e, -2 * e, e, 2 * e],
        ]
    )


@pytest.fixture
def ex1():
    return exact_matrix(EX1_ROWS)


@pytest.fixture
def ex2():
    return exact_matrix(EX2_ROWS)


@pytest.fixture
def ex1_approx():
    return to_approx(exact_matrix(EX1_ROWS))


@pytest.fixture
def ex2_approx():
    return to_approx(exact_matrix(EX2_ROWS))


@pytest.fixture(scope="session")
def fixtures_dir():
    from pathlib import Path

    return Path(__file__).resolve().parent.parent / "fixtures"
