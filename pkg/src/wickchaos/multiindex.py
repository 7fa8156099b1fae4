"""Sparse multi-indices labelling the Hermite basis of the chaos decomposition.

A MultiIndex is the exponent pattern alpha of a basis element
prod_i H_{alpha_i}(e~_i).  Basis indices are 0-based internally; the JSON
and DSL surfaces are 1-based and convert at the boundary.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .hermite import factorial


class MultiIndex:
    """Immutable sorted sparse map basis_index -> multiplicity.

    Canonical form is enforced at construction: indices strictly increasing,
    multiplicities >= 1, duplicates merged.  The empty index (degree 0) is
    the label of the constant term.
    """

    __slots__ = ("entries", "degree")

    entries: tuple[tuple[int, int], ...]
    degree: int

    def __init__(self, entries: Iterable[tuple[int, int]] = ()):
        merged: dict[int, int] = {}
        for idx, mult in entries:
            idx = int(idx)
            mult = int(mult)
            if idx < 0:
                raise ValueError(f"basis index must be non-negative, got {idx}")
            if mult < 0:
                raise ValueError(f"multiplicity must be non-negative, got {mult}")
            if mult:
                merged[idx] = merged.get(idx, 0) + mult
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))
        object.__setattr__(self, "degree", sum(merged.values()))

    @classmethod
    def from_exponents(cls, exponents: Mapping[int, int]) -> "MultiIndex":
        return cls(exponents.items())

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "MultiIndex":
        """Build from a list of basis indices with repetition, e.g. (0,0,2)."""
        counts: dict[int, int] = {}
        for i in indices:
            counts[int(i)] = counts.get(int(i), 0) + 1
        return cls(counts.items())

    def __setattr__(self, name, value):
        raise AttributeError("MultiIndex is immutable")

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __lt__(self, other: "MultiIndex"):
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.degree, self.entries)

    def __repr__(self):
        body = ", ".join(f"{i}:{m}" for i, m in self.entries)
        return "{" + body + "}"

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        counts = dict(self.entries)
        for i, m in other.entries:
            counts[i] = counts.get(i, 0) + m
        return MultiIndex(counts.items())

    def multiplicity(self, idx: int) -> int:
        for i, m in self.entries:
            if i == idx:
                return m
        return 0

    def decremented(self, idx: int) -> "MultiIndex":
        """Lower the multiplicity at idx by one (idx must be present)."""
        counts = dict(self.entries)
        if counts.get(idx, 0) < 1:
            raise ValueError(f"index {idx} absent, cannot decrement")
        counts[idx] -= 1
        return MultiIndex(counts.items())

    def factorial(self) -> float:
        """alpha! = prod multiplicities!, the diagonal weight of the basis."""
        out = 1.0
        for _, m in self.entries:
            out *= factorial(m)
        return out

    def max_index(self) -> int:
        """Largest basis index present, -1 for the empty index."""
        return self.entries[-1][0] if self.entries else -1

    def to_indices(self) -> tuple[int, ...]:
        """Expanded sorted tuple listing indices with repetition."""
        out: list[int] = []
        for i, m in self.entries:
            out.extend([i] * m)
        return tuple(out)


EMPTY = MultiIndex()


def multiindex_add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    """Componentwise multiplicity sum (degrees add)."""
    return alpha + beta


def multiindex_factorial(alpha: MultiIndex) -> float:
    """alpha! = prod_i alpha_i!; equals E[(prod_i H_{alpha_i}(e~_i))^2]."""
    return alpha.factorial()
