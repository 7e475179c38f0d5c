import re
from pathlib import Path

import pytest

from soficmaps.core.config import AppConfig
from soficmaps.presentation import load_presentation
from soficmaps.shift import BlockMap, SoficShift

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> str:
    return str(DATA / f"{name}.json")


def load_shift(name: str) -> SoficShift:
    return SoficShift(load_presentation(data_path(name)), name=name)


def w(text: str) -> tuple[str, ...]:
    return tuple(text)


# Forbidden-factor scanners used as independent membership oracles.
def gm_scan(word: str) -> bool:
    return "11" not in word


def even_scan(word: str) -> bool:
    return re.search(r"0(11)*10", word) is None


def full2_scan(word: str) -> bool:
    return True


def ne3_scan(word: str) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


@pytest.fixture(scope="session")
def gm() -> SoficShift:
    return load_shift("gm")


@pytest.fixture(scope="session")
def even() -> SoficShift:
    return load_shift("even")


@pytest.fixture(scope="session")
def even3() -> SoficShift:
    return load_shift("even3")


@pytest.fixture(scope="session")
def full2() -> SoficShift:
    return load_shift("full2")


@pytest.fixture(scope="session")
def ne3() -> SoficShift:
    return load_shift("ne3")


@pytest.fixture(scope="session")
def union() -> SoficShift:
    return load_shift("union")


@pytest.fixture
def config() -> AppConfig:
    """Small caps so decision runs stay at desk scale."""
    return AppConfig(
        threads=1,
        log_level="WARNING",
        oracle_max_window=1,
        oracle_node_budget=200_000,
        h_cap=2,
        k_cap=1,
        n_cap=2,
        c_cap=1,
        tuple_budget=50_000,
        candidate_budget=16,
        entropy_tol=1e-9,
        psi_require_fixed_point=False,
    )


@pytest.fixture(scope="session")
def ten_detector(full2) -> BlockMap:
    """y_i = 1 exactly when x_i x_{i+1} = 10, written on the window [-1, 1]."""
    return BlockMap.from_function(full2, 1, lambda b: "1" if b[1:] == ("1", "0") else "0")
