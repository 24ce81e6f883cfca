"""Shared fixtures and helpers for the test suite."""
from __future__ import annotations

import os

import pytest

from galkit import catalog

PROGRAMS_DIR = os.path.join(os.path.dirname(__file__), "programs")


def program_text(name: str) -> str:
    with open(os.path.join(PROGRAMS_DIR, name), encoding="utf-8") as fh:
        return fh.read()


def program_names() -> list[str]:
    return sorted(
        f for f in os.listdir(PROGRAMS_DIR) if f.endswith(".while")
    )


@pytest.fixture(scope="session")
def sign_pgi():
    return catalog.builtin("sign_pgi", 64)


@pytest.fixture(scope="session")
def signconst():
    return catalog.builtin("signconst_pcgc", 64)


@pytest.fixture(scope="session")
def parity():
    return catalog.builtin("parity", 64)
