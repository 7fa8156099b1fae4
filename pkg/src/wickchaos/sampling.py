"""Deterministic Gaussian sampling.

The stream is counter-based: chunk i of a batch is generated by a Philox
(4x64) generator keyed with (seed, i), so any chunk can be produced
independently of the others and batches may be filled in parallel without
changing a single bit of output.  Standard normals come from numpy's
ziggurat method on that stream; the exact method is recorded in
SampleBatch.method so outputs are self-describing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CHUNK_SIZE = 1 << 16

NORMAL_METHOD = "philox4x64/ziggurat-standard-normal"

_MASK64 = (1 << 64) - 1


def chunk_normals(dim: int, seed: int, chunk_index: int, n_rows: int) -> np.ndarray:
    """Rows chunk_index*CHUNK_SIZE .. +n_rows of the (dim, seed) stream."""
    key = np.array([seed & _MASK64, chunk_index & _MASK64], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    return gen.standard_normal((n_rows, dim))


def chunk_layout(n: int) -> list[tuple[int, int]]:
    """(chunk_index, rows) pairs covering n samples at the fixed chunk size."""
    out = []
    i = 0
    while n > 0:
        rows = min(CHUNK_SIZE, n)
        out.append((i, rows))
        n -= rows
        i += 1
    return out


@dataclass(frozen=True)
class SampleBatch:
    """A seeded matrix of i.i.d. N(0,1) draws; rows are samples, columns
    the Gaussian coordinates e~_1..e~_d.  Regenerating with the same
    (dim, n, seed) reproduces data bitwise."""

    seed: int
    dim: int
    data: np.ndarray = field(repr=False)
    method: str = NORMAL_METHOD

    @property
    def n_samples(self) -> int:
        return self.data.shape[0]


def sample_gaussians(dim: int, n: int, seed: int) -> SampleBatch:
    """n x dim standard normals from the deterministic chunked stream."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = [chunk_normals(dim, seed, ci, rows) for ci, rows in chunk_layout(n)]
    data = parts[0] if len(parts) == 1 else np.concatenate(parts, axis=0)
    data.setflags(write=False)
    return SampleBatch(seed=seed, dim=dim, data=data)
