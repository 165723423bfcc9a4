import numpy as np

from implimine.parallel import deterministic_map, resolve_threads


def test_resolve_threads():
    assert resolve_threads(1) == 1
    assert resolve_threads(4) == 4
    assert resolve_threads(0) >= 1


def test_deterministic_map_preserves_order():
    items = list(range(200))
    fn = lambda x: x * x
    serial = deterministic_map(fn, items, threads=1)
    for threads in (2, 4, 8):
        assert deterministic_map(fn, items, threads=threads) == serial


def test_deterministic_map_float_reductions_identical():
    rng = np.random.default_rng(77)
    chunks = [rng.uniform(0, 1, 257) for _ in range(32)]
    fn = lambda arr: float(arr.sum())
    serial = deterministic_map(fn, chunks, threads=1)
    threaded = deterministic_map(fn, chunks, threads=8)
    assert serial == threaded
