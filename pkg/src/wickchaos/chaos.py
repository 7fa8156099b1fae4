"""The chaos algebra: ChaosVector and its exact operations.

A square-integrable functional of d independent standard Gaussians
e~_1, ..., e~_d is stored by its Hermite-basis coefficients,

    F = sum_alpha c_alpha prod_i H_{alpha_i}(e~_i),

a sparse map MultiIndex -> float.  In this basis the L2 geometry is
diagonal (<F, G> = sum_alpha alpha! c_alpha d_alpha), the Wick product is
multi-index convolution, and the ordinary product reduces to coordinatewise
Hermite linearization.  Everything here is exact up to float rounding; the
truncation order is a hard cap that raises OrderOverflowError rather than
silently dropping terms.
"""

from __future__ import annotations

import math
from itertools import product as iter_product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatchError, OrderOverflowError
from .hermite import hermite_linearize, hermite_rows
from .multiindex import EMPTY, MultiIndex
from .sampling import SampleBatch
from .tensors import SymTensor, ordered_count

PRUNE_DEFAULT = 1e-14

_EVAL_BLOCK = 1 << 16


class ChaosVector:
    """Truncated Wiener chaos expansion over dimension dim.

    Parameters
    ----------
    dim : number of Gaussian coordinates.
    max_order : truncation cap; no stored degree may exceed it.
    terms : map MultiIndex -> coefficient.
    prune : coefficients with |c| <= prune are dropped at construction and
        the threshold propagates through arithmetic (series constructors
        pass 0.0 because their meaningful coefficients go below any fixed
        threshold while multiplying large Hermite values).
    """

    __slots__ = ("dim", "max_order", "prune", "_terms")

    def __init__(self, dim: int, max_order: int,
                 terms: Mapping[MultiIndex, float] | None = None,
                 prune: float = PRUNE_DEFAULT):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        if max_order < 0:
            raise ValueError("max_order must be >= 0")
        self.dim = dim
        self.max_order = max_order
        self.prune = prune
        store: dict[MultiIndex, float] = {}
        for alpha, c in (terms or {}).items():
            if not isinstance(alpha, MultiIndex):
                alpha = MultiIndex.from_exponents(alpha)
            if alpha.degree > max_order:
                raise OrderOverflowError(
                    f"multi-index {alpha} has degree {alpha.degree} > max_order {max_order}")
            if alpha.max_index() >= dim:
                raise DimensionMismatchError(
                    f"multi-index {alpha} uses basis index >= dim {dim}")
            c = float(c)
            if abs(c) > prune:
                store[alpha] = c
        self._terms = store

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim: int, max_order: int) -> "ChaosVector":
        return cls(dim, max_order, {})

    @classmethod
    def constant(cls, c: float, dim: int, max_order: int) -> "ChaosVector":
        return cls(dim, max_order, {EMPTY: c})

    @classmethod
    def coordinate(cls, i: int, dim: int, max_order: int) -> "ChaosVector":
        """The Gaussian coordinate e~_i itself (0-based i)."""
        return cls(dim, max_order, {MultiIndex(((i, 1),)): 1.0})

    @classmethod
    def linear(cls, coords: Sequence[float], max_order: int = 1,
               prune: float = PRUNE_DEFAULT) -> "ChaosVector":
        """g~ = sum_j g_j e~_j for g in H = R^d."""
        dim = len(coords)
        terms = {MultiIndex(((j, 1),)): float(g) for j, g in enumerate(coords) if g != 0.0}
        return cls(dim, max_order, terms, prune=prune)

    # -- plumbing ------------------------------------------------------

    @property
    def terms(self) -> dict[MultiIndex, float]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, alpha: MultiIndex) -> float:
        return self._terms.get(alpha, 0.0)

    def degree(self) -> int:
        return max((a.degree for a in self._terms), default=0)

    def n_terms(self) -> int:
        return len(self._terms)

    def with_max_order(self, max_order: int) -> "ChaosVector":
        """Same terms under a different cap (must still fit)."""
        return ChaosVector(self.dim, max_order, self._terms, prune=0.0)

    def degree_part(self, n: int) -> "ChaosVector":
        return ChaosVector(self.dim, self.max_order,
                           {a: c for a, c in self._terms.items() if a.degree == n}, prune=0.0)

    def __eq__(self, other):
        return (isinstance(other, ChaosVector) and self.dim == other.dim
                and self._terms == other._terms)

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"{a}: {c:g}" for a, c in sorted(self._terms.items(),
                                                           key=lambda kv: kv[0].sort_key()))
        return f"ChaosVector(dim={self.dim}, max_order={self.max_order}, {{{inner}}})"

    # -- operator sugar ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = ChaosVector.constant(float(other), self.dim, self.max_order)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = ChaosVector.constant(float(other), self.dim, self.max_order)
        return add(self, scale(other, -1.0))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, float(other))
        return ordinary_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, float(other))
        return NotImplemented


def _common(F: ChaosVector, G: ChaosVector) -> tuple[int, int, float]:
    if F.dim != G.dim:
        raise DimensionMismatchError(f"dims differ: {F.dim} vs {G.dim}")
    return F.dim, max(F.max_order, G.max_order), min(F.prune, G.prune)


# -- linear structure ----------------------------------------------------

def add(F: ChaosVector, G: ChaosVector) -> ChaosVector:
    dim, order, prune = _common(F, G)
    out = dict(F._terms)
    for a, c in G._terms.items():
        out[a] = out.get(a, 0.0) + c
    return ChaosVector(dim, order, out, prune=prune)


def scale(F: ChaosVector, c: float) -> ChaosVector:
    return ChaosVector(F.dim, F.max_order, {a: c * v for a, v in F._terms.items()},
                       prune=F.prune)


# -- tensor conversion ----------------------------------------------------

def from_tensor(f: SymTensor, max_order: int | None = None) -> ChaosVector:
    """I_n(f) for a symmetric order-n tensor, in Hermite coordinates.

    The coefficient at the multi-index alpha of a stored tuple is
    (n!/alpha!) * value: the count of ordered tuples collapsing onto the
    representative times the stored value.  This reproduces
    I_n(g^{(x)n}) = |g|^n H_n(g~/|g|) and the isometry E I_n(f)^2 = n! |f|^2.
    """
    n = f.order
    cap = n if max_order is None else max_order
    if n > cap:
        raise OrderOverflowError(f"tensor order {n} exceeds max_order {cap}")
    terms: dict[MultiIndex, float] = {}
    for t, v in f.values.items():
        alpha = MultiIndex.from_indices(t)
        terms[alpha] = terms.get(alpha, 0.0) + ordered_count(t) * v
    return ChaosVector(f.dim, cap, terms, prune=0.0)


def to_tensor(F: ChaosVector, n: int) -> SymTensor:
    """Extract f_n with degree-n part of F equal to I_n(f_n)."""
    vals: dict[tuple[int, ...], float] = {}
    for alpha, c in F._terms.items():
        if alpha.degree == n:
            t = alpha.to_indices()
            vals[t] = c / ordered_count(t)
    return SymTensor(F.dim, n, vals, prune=0.0)


# -- inner products and norms ---------------------------------------------

def inner_product(F: ChaosVector, G: ChaosVector) -> float:
    """<F, G> = E[FG] = sum_alpha alpha! c_alpha d_alpha."""
    if F.dim != G.dim:
        raise DimensionMismatchError(f"dims differ: {F.dim} vs {G.dim}")
    small, big = (F, G) if F.n_terms() <= G.n_terms() else (G, F)
    out = 0.0
    for a, c in small._terms.items():
        d = big._terms.get(a)
        if d is not None:
            out += a.factorial() * c * d
    return out


def l2_norm(F: ChaosVector) -> float:
    return math.sqrt(inner_product(F, F))


def gamma_norm(F: ChaosVector, r: float) -> float:
    """|F|_(r) = |Gamma(r) F|_2 = sqrt(sum alpha! r^(2 deg) c^2)."""
    if r <= 0:
        raise ValueError("r must be positive")
    return math.sqrt(sum(a.factorial() * r ** (2 * a.degree) * c * c
                         for a, c in F._terms.items()))


def second_quantization(F: ChaosVector, a: float) -> ChaosVector:
    """Gamma(a): scale the degree-n component by a^n."""
    return ChaosVector(F.dim, F.max_order,
                       {al: c * a ** al.degree for al, c in F._terms.items()},
                       prune=F.prune)


def expectation(F: ChaosVector) -> float:
    """E[F]: the coefficient of the empty index (E I_n = 0 for n >= 1)."""
    return F._terms.get(EMPTY, 0.0)


# -- products --------------------------------------------------------------

def wick_product(F: ChaosVector, G: ChaosVector, clip: bool = False) -> ChaosVector:
    """Wick product: multi-index convolution (F<>G)_gamma = sum c_alpha d_beta.

    Realizes I_n(f) <> I_m(g) = I_{n+m}(f (x)^ g).  With clip=True the
    result is orthogonally projected onto degrees <= max_order instead of
    raising; the DSL session algebra uses that mode.
    """
    dim, order, prune = _common(F, G)
    out: dict[MultiIndex, float] = {}
    for a, c in F._terms.items():
        for b, d in G._terms.items():
            if a.degree + b.degree > order:
                if clip:
                    continue
                raise OrderOverflowError(
                    f"Wick term degree {a.degree + b.degree} exceeds max_order {order}")
            g = a + b
            out[g] = out.get(g, 0.0) + c * d
    return ChaosVector(dim, order, out, prune=prune)


def ordinary_product(F: ChaosVector, G: ChaosVector, clip: bool = False) -> ChaosVector:
    """Pointwise product, exact in the Hermite basis.

    Coordinates are independent, so H_alpha * H_beta splits into a product
    over coordinates of one-dimensional linearizations
    H_a H_b = sum_p p! C(a,p) C(b,p) H_{a+b-2p}.
    """
    dim, order, prune = _common(F, G)
    out: dict[MultiIndex, float] = {}
    for a, c in F._terms.items():
        ea = dict(a.entries)
        for b, d in G._terms.items():
            if a.degree + b.degree > order and not clip:
                raise OrderOverflowError(
                    f"product term degree {a.degree + b.degree} exceeds max_order {order}")
            eb = dict(b.entries)
            coords = sorted(set(ea) | set(eb))
            base = c * d
            # per-coordinate expansions, then the cross product of choices
            expansions = [list(hermite_linearize(ea.get(i, 0), eb.get(i, 0)).items())
                          for i in coords]
            for combo in iter_product(*expansions):
                exps = {i: k for i, (k, _) in zip(coords, combo) if k}
                gamma = MultiIndex.from_exponents(exps)
                if gamma.degree > order:
                    continue
                w = base
                for _, (_, coef) in zip(coords, combo):
                    w *= coef
                out[gamma] = out.get(gamma, 0.0) + w
    return ChaosVector(dim, order, out, prune=prune)


def wick_power(F: ChaosVector, k: int, clip: bool = False) -> ChaosVector:
    """k-fold Wick product; F^{<>0} = 1."""
    if k < 0:
        raise ValueError("Wick power needs k >= 0")
    out = ChaosVector.constant(1.0, F.dim, F.max_order)
    for _ in range(k):
        out = wick_product(out, F, clip=clip)
    return out


def exponential_vector(f: Sequence[float], max_order: int) -> ChaosVector:
    """Truncation of eps(f) = sum_n I_n(f^{(x)n}) / n!.

    In Hermite coordinates the coefficient at alpha is prod_i f_i^{alpha_i}
    / alpha_i!.  Built unpruned: the 1/alpha! decay crosses any fixed
    threshold while the matching Hermite values grow.
    """
    dim = max(len(f), 1)
    support = [(i, float(v)) for i, v in enumerate(f) if v != 0.0]
    terms: dict[MultiIndex, float] = {EMPTY: 1.0}

    def rec(pos: int, remaining: int, exps: list[tuple[int, int]], weight: float):
        if pos == len(support):
            if exps:
                terms[MultiIndex(tuple(exps))] = weight
            return
        idx, val = support[pos]
        rec(pos + 1, remaining, exps, weight)
        w = weight
        for m in range(1, remaining + 1):
            w *= val / m
            rec(pos + 1, remaining - m, exps + [(idx, m)], w)

    rec(0, max_order, [], 1.0)
    return ChaosVector(dim, max_order, terms, prune=0.0)


# -- evaluation -------------------------------------------------------------

def _evaluate_block(F: ChaosVector, x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    needed: dict[int, int] = {}
    for alpha in F._terms:
        for i, m in alpha.entries:
            needed[i] = max(needed.get(i, 0), m)
    rows = {i: hermite_rows(x[:, i], deg) for i, deg in needed.items()}
    out = np.zeros(n)
    for alpha, c in F._terms.items():
        term = np.full(n, c)
        for i, m in alpha.entries:
            term = term * rows[i][m]
        out += term
    return out


def evaluate(F: ChaosVector, batch: SampleBatch | np.ndarray) -> np.ndarray:
    """Per sample: sum_alpha c_alpha prod_i H_{alpha_i}(x_i)."""
    x = batch.data if isinstance(batch, SampleBatch) else np.asarray(batch, dtype=float)
    if x.ndim != 2:
        raise ValueError("expected a 2-d sample matrix")
    if x.shape[1] != F.dim:
        raise DimensionMismatchError(f"batch dim {x.shape[1]} != vector dim {F.dim}")
    n = x.shape[0]
    if n <= _EVAL_BLOCK:
        return _evaluate_block(F, x)
    out = np.empty(n)
    for start in range(0, n, _EVAL_BLOCK):
        stop = min(start + _EVAL_BLOCK, n)
        out[start:stop] = _evaluate_block(F, x[start:stop])
    return out


def evaluate_at(F: ChaosVector, point: Sequence[float]) -> float:
    """Evaluate at a single point of R^d."""
    pt = np.asarray(point, dtype=float).reshape(1, -1)
    return float(evaluate(F, pt)[0])


def coeff_distance(F: ChaosVector, G: ChaosVector) -> float:
    """max over multi-indices of |c_alpha(F) - c_alpha(G)|."""
    if F.dim != G.dim:
        raise DimensionMismatchError(f"dims differ: {F.dim} vs {G.dim}")
    keys = set(F._terms) | set(G._terms)
    return max((abs(F.coeff(a) - G.coeff(a)) for a in keys), default=0.0)
