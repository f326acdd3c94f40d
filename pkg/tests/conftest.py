from pathlib import Path

import pytest

from src.core.schemas import Fact
from src.syntax.parser import parse_instance

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def instance_path(name: str) -> Path:
    return INSTANCES / f"{name}.idb"


def load(name: str):
    return parse_instance(instance_path(name).read_text(encoding="utf-8"))


def f(pred: str, *args) -> Fact:
    """Fact shorthand: ints are numerals, None is null, strings are symbols"""
    return Fact.of(pred, *args)


@pytest.fixture
def join_request():
    return load("join_request")


@pytest.fixture
def forced_null():
    return load("forced_null")


@pytest.fixture
def odd_loop():
    return load("odd_loop")


@pytest.fixture
def odd_loop_constrained():
    return load("odd_loop_constrained")


@pytest.fixture
def excluded_value():
    return load("excluded_value")


@pytest.fixture
def fresh_join():
    return load("fresh_join")


@pytest.fixture
def two_requests():
    return load("two_requests")


@pytest.fixture
def two_level():
    return load("two_level")
