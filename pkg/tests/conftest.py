import sys
from fractions import Fraction
from functools import lru_cache

import pytest

from dmlattice.moves import build_generators
from dmlattice.params import SYMMETRIC_PAIRS, TABLE, derive_params

ROWS = [(int(r.p), Fraction(r.k)) for r in TABLE]

# one row per collapse case plus the symmetric FullD row
REPRESENTATIVE = [(4, 4), (5, 5), (8, 2), (8, 3), (10, 5)]


def row_id(pk):
    p, k = pk
    return f"{p},{k}"


@lru_cache(maxsize=None)
def params_for(p, k):
    return derive_params(p, k)


@lru_cache(maxsize=None)
def gens_for(p, k):
    return build_generators(params_for(p, k))


@pytest.fixture(params=ROWS, ids=row_id)
def row(request):
    return request.param


@pytest.fixture(params=[(int(p), Fraction(k)) for p, k in SYMMETRIC_PAIRS], ids=row_id)
def symmetric_row(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
