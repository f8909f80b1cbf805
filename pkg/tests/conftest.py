"""Shared fixtures: the golden algebras parsed once per session"""
import os
import sys

import pytest

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from arthom.fixtures import FIX_A2, FIX_C3, FIX_G, load_fixture


@pytest.fixture(scope="session")
def a2():
    """Path algebra of 1 -> 2 as (algebra, modules)"""
    doc, mods = load_fixture("A2")
    return doc.algebra, mods


@pytest.fixture(scope="session")
def g():
    """1 -> 2 -> 3 -> 4 <- 5 <- 6 with I = I(2)+...+I(6) declared"""
    doc, mods = load_fixture("G")
    return doc.algebra, mods


@pytest.fixture(scope="session")
def c3():
    """Cyclic Nakayama algebra with M = S(1) + U + DA declared"""
    doc, mods = load_fixture("C3")
    return doc.algebra, mods


@pytest.fixture
def fixture_files(tmp_path):
    """The golden algebras written to disk for the CLI"""
    paths = {}
    for name, text in (("a2", FIX_A2), ("g", FIX_G), ("c3", FIX_C3)):
        path = tmp_path / f"{name}.alg"
        path.write_text(text, encoding="utf-8")
        paths[name] = str(path)
    return paths
