"""Deterministic counter-based Gaussian stream."""

import numpy as np

from wickchaos.sampling import (CHUNK_SIZE, NORMAL_METHOD, SampleBatch,
                                chunk_layout, chunk_normals, sample_gaussians)


def test_chunk_layout_partitions_n():
    assert chunk_layout(5) == [(0, 5)]
    assert chunk_layout(CHUNK_SIZE) == [(0, CHUNK_SIZE)]
    layout = chunk_layout(CHUNK_SIZE + 5)
    assert layout == [(0, CHUNK_SIZE), (1, 5)]
    for n in (1, 17, CHUNK_SIZE - 1, CHUNK_SIZE + 1, 3 * CHUNK_SIZE + 9):
        layout = chunk_layout(n)
        assert sum(rows for _, rows in layout) == n
        assert [i for i, _ in layout] == list(range(len(layout)))


def test_chunk_normals_reproducible_and_keyed():
    a = chunk_normals(3, seed=42, chunk_index=0, n_rows=100)
    b = chunk_normals(3, seed=42, chunk_index=0, n_rows=100)
    assert a.shape == (100, 3)
    assert np.array_equal(a, b)
    c = chunk_normals(3, seed=42, chunk_index=1, n_rows=100)
    d = chunk_normals(3, seed=43, chunk_index=0, n_rows=100)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_prefix_of_chunk_is_stable():
    # reading fewer rows from the same chunk yields the same leading rows
    full = chunk_normals(2, seed=7, chunk_index=4, n_rows=1000)
    head = chunk_normals(2, seed=7, chunk_index=4, n_rows=10)
    assert np.array_equal(full[:10], head)


def test_sample_gaussians_concatenates_chunks():
    n = CHUNK_SIZE + 137
    batch = sample_gaussians(2, n, seed=5)
    assert isinstance(batch, SampleBatch)
    assert batch.data.shape == (n, 2)
    assert batch.n_samples == n
    assert batch.method == NORMAL_METHOD
    assert np.array_equal(batch.data[:CHUNK_SIZE], chunk_normals(2, 5, 0, CHUNK_SIZE))
    assert np.array_equal(batch.data[CHUNK_SIZE:], chunk_normals(2, 5, 1, 137))


def test_moments_sane():
    batch = sample_gaussians(1, 200000, seed=11)
    x = batch.data[:, 0]
    n = x.size
    # mean and raw moments inside 5 standard errors of the normal values
    assert abs(x.mean()) < 5 / np.sqrt(n)
    assert abs((x ** 2).mean() - 1.0) < 5 * np.sqrt(2.0 / n)
    assert abs((x ** 4).mean() - 3.0) < 5 * np.sqrt(96.0 / n)
    assert abs((x ** 3).mean()) < 5 * np.sqrt(15.0 / n)


def test_method_label_is_pinned():
    assert NORMAL_METHOD == "philox4x64/ziggurat-standard-normal"
