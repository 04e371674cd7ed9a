import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab import _pykernels, kernels
from twistlab.definability import binary_clone
from twistlab.matrices import named_matrix

cython = pytest.importorskip("twistlab._kernels", reason="compiled kernels not built")

BACKENDS = [_pykernels, cython]


@pytest.fixture
def restore_backend():
    previous = kernels.BACKEND
    yield
    kernels.set_backend(previous)


@pytest.mark.parametrize("mod", BACKENDS, ids=["python", "cython"])
def test_table_store(mod):
    s = mod.TableStore(4, 3)
    a = np.array([0, 1, 2, 3], dtype=np.uint8)
    b = np.array([3, 2, 1, 0], dtype=np.uint8)
    assert s.add(a) == 0
    assert s.add(a, 5, 6, 7) == 0
    assert s.add(b, 1, 0, -1) == 1
    assert s.find(b) == 1 and s.find(np.zeros(4, dtype=np.uint8)) == -1
    assert s.add(np.ones(4, dtype=np.uint8)) == 2
    assert s.add(np.full(4, 2, dtype=np.uint8)) == -1
    assert s.size == 3
    assert np.asarray(s.op)[:3].tolist() == [-1, 1, -1]
    assert np.asarray(s.left)[:3].tolist() == [-1, 0, -1]
    assert np.asarray(s.rows()).shape == (3, 4)


def _run(mod, name, basis, cap, max_levels=None):
    a = named_matrix(name).algebra
    n = len(a)
    store = mod.TableStore(n * n, cap)
    i = np.repeat(np.arange(n), n).astype(np.uint8)
    j = np.tile(np.arange(n), n).astype(np.uint8)
    store.add(i, -1, 0, -1)
    store.add(j, -1, 1, -1)
    ops = [(a.signature[b], np.ascontiguousarray(a.tables[b], dtype=np.uint8)) for b in basis]
    levels = [(0, store.size)]
    statuses = []
    while max_levels is None or len(levels) <= max_levels:
        start, end = levels[-1]
        status, _ = mod.expand_level(store, start, end, ops, cap, None)
        statuses.append(status)
        if store.size > end:
            levels.append((end, store.size))
        if status != mod.LEVEL_DONE or store.size == end:
            break
    return (levels, statuses, np.asarray(store.rows()).copy(), np.asarray(store.op)[:store.size].copy(),
            np.asarray(store.left)[:store.size].copy(), np.asarray(store.right)[:store.size].copy())


@pytest.mark.parametrize("name, basis, cap", [
    ("DF3", ["neg", "and", "or", "imp"], 10_000),
    ("CN3", ["neg", "imp"], 10_000),
    ("DFg4", ["neg", "and", "imp"], 3_000),
    ("Ff4", ["neg", "and", "or", "imp"], 10_000),
])
def test_expand_level_parity(name, basis, cap):
    py = _run(_pykernels, name, basis, cap)
    cy = _run(cython, name, basis, cap)
    assert py[0] == cy[0] and py[1] == cy[1]
    for x, y in zip(py[2:], cy[2:]):
        assert np.array_equal(x, y)


@pytest.mark.parametrize("mod", BACKENDS, ids=["python", "cython"])
def test_expand_level_finds_target(mod):
    a = named_matrix("CN3").algebra
    store = mod.TableStore(9, 1000)
    store.add(np.repeat(np.arange(3), 3).astype(np.uint8), -1, 0, -1)
    store.add(np.tile(np.arange(3), 3).astype(np.uint8), -1, 1, -1)
    target = np.ascontiguousarray(a.tables["imp"], dtype=np.uint8).reshape(-1)
    ops = [(2, np.ascontiguousarray(a.tables["imp"], dtype=np.uint8))]
    status, idx = mod.expand_level(store, 0, 2, ops, 1000, target)
    assert status == mod.TARGET_FOUND
    assert np.array_equal(np.asarray(store.rows())[idx], target)
    assert np.asarray(store.left)[idx] == 0 and np.asarray(store.right)[idx] == 1


@settings(max_examples=60)
@given(st.integers(2, 8), st.data())
def test_close_subset_parity(n, data):
    el = st.integers(0, n - 1)
    unary = [np.array(data.draw(st.lists(el, min_size=n, max_size=n)), dtype=np.int64)]
    binary = [np.array(data.draw(st.lists(st.lists(el, min_size=n, max_size=n), min_size=n, max_size=n)),
                       dtype=np.int64)]
    consts = data.draw(st.lists(el, max_size=2))
    mask = data.draw(st.integers(0, (1 << n) - 1))
    got = _pykernels.close_subset(mask, n, unary, binary, consts)
    assert cython.close_subset(mask, n, unary, binary, consts) == got
    # closed, and contains the seed
    inside = [e for e in range(n) if got >> e & 1]
    assert mask & ~got == 0
    for c in consts:
        assert got >> c & 1
    for x in inside:
        assert got >> int(unary[0][x]) & 1
        for y in inside:
            assert got >> int(binary[0][x, y]) & 1


def test_set_backend_switches_the_engine(restore_backend):
    results = {}
    for name in kernels.available():
        kernels.set_backend(name)
        assert kernels.BACKEND == name
        frag = binary_clone(named_matrix("DF3"), ["neg", "and", "or", "imp", "top"])
        results[name] = (tuple(frag.level_sizes()), frag.rows().tobytes())
    assert len(set(results.values())) == 1
    with pytest.raises(ValueError, match="unknown backend"):
        kernels.set_backend("fortran")


def test_environment_forces_the_fallback():
    env = dict(os.environ, TWISTLAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import twistlab.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
