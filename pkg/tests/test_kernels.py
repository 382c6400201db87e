import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elbowcover import _pykernels, kernels

from strategies import order_lists

BACKENDS = kernels.available_backends()
compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


def test_backend_reported():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_min_cover_small():
    assert _pykernels.min_cover([0b011, 0b110, 0b100], 0b111, 3) == 2
    assert _pykernels.min_cover([0b001, 0b010], 0b111, 3) == -1
    assert _pykernels.min_cover([], 0, 2) == 0


def test_min_cover_brute_force():
    rng = random.Random(3)
    for _ in range(40):
        bits = rng.randint(1, 10)
        full = (1 << bits) - 1
        masks = [rng.randrange(1 << bits) for _ in range(rng.randint(1, 12))]
        best = -1
        for k in range(1, 5):
            if any(
                (lambda u: u == full)(sum_or(c)) for c in itertools.combinations(masks, k)
            ):
                best = k
                break
        assert _pykernels.min_cover(masks, full, 4) == best


def sum_or(masks):
    out = 0
    for m in masks:
        out |= m
    return out


def test_reduce_masks_drops_dominated():
    assert sorted(_pykernels.reduce_masks([0b11, 0b01, 0b11, 0b100])) == [0b11, 0b100]


def brute_cost(orders, mixing):
    n = len(orders[0])
    bad = 0
    for a in range(n):
        for b, c in itertools.combinations([x for x in range(n) if x != a], 2):
            ok = False
            for o in orders:
                pa, pb, pc = o.index(a), o.index(b), o.index(c)
                if (pa > pb and pa > pc) or (mixing and pa < pb and pa < pc):
                    ok = True
            bad += not ok
    return bad


@given(order_lists(max_c=7, max_k=4), st.booleans())
def test_family_cost_python(data, mixing):
    _, orders = data
    assert _pykernels.family_cost(orders, mixing) == brute_cost(orders, mixing)


@compiled
@given(order_lists(max_c=9, max_k=5), st.booleans())
def test_family_cost_backends_agree(data, mixing):
    _, orders = data
    c = BACKENDS["cython"]
    assert c.family_cost(orders, mixing) == _pykernels.family_cost(orders, mixing)


@compiled
@settings(max_examples=25)
@given(st.integers(3, 8), st.integers(1, 4), st.booleans(), st.integers(0, 2**32))
def test_local_search_trajectories_identical(n, k, mixing, seed):
    rng = random.Random(seed)
    start = [list(range(n))] + [rng.sample(range(n), n) for _ in range(k - 1)]
    py = _pykernels.local_search(start, mixing, seed, 400, 16)
    cy = BACKENDS["cython"].local_search(start, mixing, seed, 400, 16)
    assert py == cy
    assert py[1] == brute_cost(py[0], mixing)


@compiled
def test_orientation_masks_backends_agree():
    rng = random.Random(5)
    for _ in range(20):
        npairs = rng.randint(1, 20)
        pe = [rng.randrange(8) for _ in range(npairs)]
        pf = [rng.randrange(8) for _ in range(npairs)]
        fe = [rng.randrange(2) for _ in range(npairs)]
        ff = [rng.randrange(2) for _ in range(npairs)]
        for kind in (kernels.ELBOW, kernels.IN_ELBOW):
            args = (pe, pf, fe, ff, kind, 0, 256)
            assert BACKENDS["cython"].orientation_masks(*args) == _pykernels.orientation_masks(*args)


@compiled
def test_min_cover_backends_agree():
    rng = random.Random(9)
    for _ in range(60):
        bits = rng.randint(1, 40)
        full = (1 << bits) - 1
        masks = [rng.randrange(1 << bits) | (1 << rng.randrange(bits)) for _ in range(rng.randint(1, 30))]
        assert BACKENDS["cython"].min_cover(masks, full, 4) == _pykernels.min_cover(masks, full, 4)


def test_local_search_finds_mixing_family():
    orders, cost, _ = kernels.local_search([[0, 1, 2, 3], [3, 2, 1, 0]], True, 1, 10_000)
    assert cost == 0 and brute_cost(orders, True) == 0


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = {**os.environ, "ELBOWCOVER_PURE_PYTHON": "1"}
    code = ("from elbowcover import kernels; from elbowcover.graph import complete_graph; "
            "from elbowcover.orientations import exact_elb, exact_inelb; "
            "print(kernels.BACKEND, exact_elb(complete_graph(5)), exact_inelb(complete_graph(4)))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "3", "3"]
