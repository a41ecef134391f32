import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import minimize

from bcmaes import benchmarks
from bcmaes.benchmarks import evaluate, get, registry
from bcmaes.exceptions import ArityMismatch, UnknownFunction

finite = st.floats(-1e3, 1e3, allow_nan=False)
vectors = st.lists(finite, min_size=1, max_size=6).map(np.array)


def test_known_values():
    assert evaluate("cone", [0.0, 0.0]) == 0.0
    assert evaluate("rastrigin", np.zeros(5)) == 0.0
    assert evaluate("schwefel2", [0.0, 0.0, 0.0]) == 0.0
    assert evaluate("cone", [3.0, 4.0]) == 5.0
    assert evaluate("schwefel1", [0.0, 0.0]) == pytest.approx(837.9658, abs=1e-12)
    assert evaluate("eggholder", [0.0, 0.0]) == pytest.approx(-47 * math.sin(math.sqrt(47)), rel=1e-15)
    assert evaluate("eggholder", [0.0, 0.0]) == pytest.approx(-25.46, abs=5e-3)


def test_hand_evaluations():
    assert evaluate("schwefel2", [1.0, -2.0, 3.0]) == 6.0 + 6.0
    assert evaluate("rastrigin", [1.0, 0.5]) == pytest.approx(20 + (1 - 10) + (0.25 + 10))
    clipped = 418.9829 - 500 * math.sin(math.sqrt(500))
    assert evaluate("schwefel1", [600.0]) == pytest.approx(clipped, rel=1e-15)
    assert evaluate("schwefel1", [-500.0]) == pytest.approx(clipped, rel=1e-15)


def test_registry():
    reg = registry()
    assert [b.id for b in reg] == ["cone", "schwefel2", "rastrigin", "schwefel1", "eggholder"]
    for bf in reg:
        p = bf.arity or 3
        assert math.isfinite(bf(bf.start(p)))
        np.testing.assert_array_equal(bf.start(p), np.full(p, 10.0))
        assert get(bf.id) is bf


def test_errors():
    with pytest.raises(ArityMismatch):
        evaluate("eggholder", [0.0, 0.0, 0.0])
    with pytest.raises(UnknownFunction):
        evaluate("sphere", [0.0])


@pytest.mark.parametrize("fid", ["cone", "schwefel2", "rastrigin"])
@given(x=vectors)
def test_even_and_nonnegative(fid, x):
    assert evaluate(fid, x) == evaluate(fid, -x)
    assert evaluate(fid, x) >= 0


@given(x=st.lists(st.floats(-2000, 2000), min_size=1, max_size=4).map(np.array), i=st.integers(0, 3))
def test_schwefel1_flat_beyond_clip(x, i):
    i %= x.size
    x[i] = math.copysign(max(abs(x[i]), 500.0) + 1.0, x[i] if x[i] != 0 else 1.0)
    h = 1e-3
    up, down = x.copy(), x.copy()
    up[i] += h
    down[i] -= h
    assert (evaluate("schwefel1", up) - evaluate("schwefel1", down)) / (2 * h) == 0.0


def test_numerical_minima_metadata():
    # independent re-derivation: local search from the stored minimizer never finds lower
    s1 = get("schwefel1")
    for p in (1, 2, 3):
        assert s1(s1.minimizer(p)) == pytest.approx(s1.f_opt(p), abs=1e-9)
        res = minimize(s1, s1.minimizer(p) + 0.3, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
        assert res.fun >= s1.f_opt(p) - 1e-9
    grid = np.linspace(-499.99, 499.99, 200_001)
    per_dim = 418.9829 - grid * np.sin(np.sqrt(np.abs(grid)))
    assert per_dim.min() >= benchmarks.SCHWEFEL1_MIN_PER_DIM - 1e-9

    egg = get("eggholder")
    assert egg(egg.minimizer(2)) == pytest.approx(egg.f_opt(2), abs=1e-9)
    g = np.linspace(-512, 512, 1025)
    vals = [egg([a, b]) for a in g[::4] for b in g[::4]]
    assert min(vals) >= egg.f_opt(2) - 1e-9
