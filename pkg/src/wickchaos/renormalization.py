"""Wick renormalization of Gaussian polynomials and quadratic exponentials.

A polynomial p(X_1..X_d) in centered Gaussians X_i = sigma_i e~_i is
renormalized monomial by monomial, :X_i^n: = sigma_i^n H_n(e~_i), which
makes renormalization an isomorphism onto the Wick algebra: :pq: = :p:<>:q:.
The same object has an independent-copy representation

    :p(X): (x) = E[ p(x + iY) ],   Y an independent copy of X,

evaluated here both exactly (the inner expectation in closed form, pure
real arithmetic) and by Monte Carlo over Y.

Quadratic exponentials: for e~ standard Gaussian the renormalized
square-exponential has the L2 expansion

    :exp(lam x^2 / 2): = sum_k lam^k / (2^k k!) H_2k(x),

convergent iff |lam| < 1, with closed form
(1+lam)^{-1/2} exp(lam x^2 / (2(1+lam))).  The multivariate version for a
quadratic form x'Mx/2 diagonalizes M and multiplies per-eigenvalue factors
exp(-lam_n/2 - ln(1+lam_n)/2 + lam_n z_n^2 / (2(1+lam_n))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .chaos import (ChaosVector, add, coeff_distance, from_tensor, scale,
                    wick_product)
from .errors import (DimensionMismatchError, DivergenceError, DomainError,
                     OrderOverflowError)
from .hermite import hermite_to_power, power_to_hermite
from .jacobi import jacobi_eigh
from .montecarlo import Estimate, _pairwise_sum
from .multiindex import EMPTY, MultiIndex
from .sampling import chunk_layout, chunk_normals
from .tensors import SymTensor

NEGDEF_TOL = 1e-12


class PolySeries:
    """A real polynomial in d commuting variables, sparse over exponents.

    truncation is a hard cap on total degree, mirroring ChaosVector's
    max_order: constructing a term beyond it raises OrderOverflowError.
    """

    __slots__ = ("dim", "truncation", "_terms")

    def __init__(self, dim: int, terms: Mapping[MultiIndex, float] | None = None,
                 truncation: int = 64):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim
        self.truncation = truncation
        store: dict[MultiIndex, float] = {}
        for alpha, c in (terms or {}).items():
            if not isinstance(alpha, MultiIndex):
                alpha = MultiIndex.from_exponents(alpha)
            if alpha.degree > truncation:
                raise OrderOverflowError(
                    f"monomial degree {alpha.degree} exceeds truncation {truncation}")
            if alpha.max_index() >= dim:
                raise DimensionMismatchError(
                    f"monomial {alpha} uses variable index >= dim {dim}")
            c = float(c)
            if c != 0.0:
                store[alpha] = c
        self._terms = store

    @classmethod
    def constant(cls, c: float, dim: int, truncation: int = 64) -> "PolySeries":
        return cls(dim, {EMPTY: c}, truncation)

    @classmethod
    def variable(cls, i: int, dim: int, truncation: int = 64) -> "PolySeries":
        return cls(dim, {MultiIndex(((i, 1),)): 1.0}, truncation)

    @property
    def terms(self) -> dict[MultiIndex, float]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, alpha: MultiIndex) -> float:
        return self._terms.get(alpha, 0.0)

    def degree(self) -> int:
        return max((a.degree for a in self._terms), default=0)

    def __eq__(self, other):
        return (isinstance(other, PolySeries) and self.dim == other.dim
                and self._terms == other._terms)

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"{a}: {c:g}" for a, c in sorted(self._terms.items(),
                                                           key=lambda kv: kv[0].sort_key()))
        return f"PolySeries(dim={self.dim}, truncation={self.truncation}, {{{inner}}})"


def poly_add(p: PolySeries, q: PolySeries) -> PolySeries:
    if p.dim != q.dim:
        raise DimensionMismatchError(f"dims differ: {p.dim} vs {q.dim}")
    out = dict(p._terms)
    for a, c in q._terms.items():
        out[a] = out.get(a, 0.0) + c
    return PolySeries(p.dim, out, max(p.truncation, q.truncation))


def poly_scale(p: PolySeries, c: float) -> PolySeries:
    return PolySeries(p.dim, {a: c * v for a, v in p._terms.items()}, p.truncation)


def poly_mul(p: PolySeries, q: PolySeries, clip: bool = False) -> PolySeries:
    """Product; with clip=True, terms beyond the cap are dropped."""
    if p.dim != q.dim:
        raise DimensionMismatchError(f"dims differ: {p.dim} vs {q.dim}")
    cap = max(p.truncation, q.truncation)
    out: dict[MultiIndex, float] = {}
    for a, c in p._terms.items():
        for b, d in q._terms.items():
            if a.degree + b.degree > cap:
                if clip:
                    continue
                raise OrderOverflowError(
                    f"product degree {a.degree + b.degree} exceeds truncation {cap}")
            g = a + b
            out[g] = out.get(g, 0.0) + c * d
    return PolySeries(p.dim, out, cap)


def poly_power(p: PolySeries, k: int, clip: bool = False) -> PolySeries:
    if k < 0:
        raise ValueError("power needs k >= 0")
    out = PolySeries.constant(1.0, p.dim, p.truncation)
    for _ in range(k):
        out = poly_mul(out, p, clip=clip)
    return out


def poly_eval(p: PolySeries, point: Sequence[float]) -> float:
    if len(point) != p.dim:
        raise DimensionMismatchError(f"point length {len(point)} != dim {p.dim}")
    out = 0.0
    for alpha, c in p._terms.items():
        term = c
        for i, m in alpha.entries:
            term *= point[i] ** m
        out += term
    return out


def _sigmas(dim: int, variances: Sequence[float] | None) -> list[float]:
    if variances is None:
        return [1.0] * dim
    if len(variances) != dim:
        raise DimensionMismatchError(
            f"{len(variances)} variances for dim {dim}")
    out = []
    for v in variances:
        if v <= 0:
            raise DomainError(f"variance must be positive, got {v}")
        out.append(math.sqrt(float(v)))
    return out


# -- Wick ordering of polynomials ------------------------------------------


def wick_order_poly(p: PolySeries,
                    variances: Sequence[float] | None = None) -> ChaosVector:
    """:p(X): for X_i = sigma_i e~_i, term by term.

    Each monomial prod X_i^{n_i} maps to prod sigma_i^{n_i} H_{n_i}(e~_i),
    one Hermite term per monomial; the map is a linear bijection.
    """
    sig = _sigmas(p.dim, variances)
    terms: dict[MultiIndex, float] = {}
    for alpha, c in p._terms.items():
        w = c
        for i, m in alpha.entries:
            w *= sig[i] ** m
        terms[alpha] = w
    return ChaosVector(p.dim, p.truncation, terms, prune=0.0)


def poly_to_chaos(p: PolySeries) -> ChaosVector:
    """The plain (unrenormalized) random variable p(e~) in the Hermite basis."""
    out: dict[MultiIndex, float] = {}
    for alpha, c in p._terms.items():
        stack: list[tuple[list[tuple[int, int]], float]] = [([], c)]
        for i, m in alpha.entries:
            conv = power_to_hermite(m)
            stack = [(exps + ([(i, k)] if k else []), w * wt)
                     for exps, w in stack for k, wt in conv.items()]
        for exps, w in stack:
            gamma = MultiIndex(tuple(exps))
            out[gamma] = out.get(gamma, 0.0) + w
    return ChaosVector(p.dim, p.truncation, out, prune=0.0)


def chaos_to_poly(F: ChaosVector) -> PolySeries:
    """Expand a chaos vector into an explicit polynomial in the coordinates."""
    out: dict[MultiIndex, float] = {}
    for alpha, c in F.items():
        stack: list[tuple[list[tuple[int, int]], float]] = [([], c)]
        for i, m in alpha.entries:
            conv = hermite_to_power(m)
            stack = [(exps + ([(i, k)] if k else []), w * wt)
                     for exps, w in stack for k, wt in conv.items()]
        for exps, w in stack:
            gamma = MultiIndex(tuple(exps))
            out[gamma] = out.get(gamma, 0.0) + w
    return PolySeries(F.dim, out, F.max_order)


# -- independent-copy representation ----------------------------------------


def _icopy_moment_poly(n: int, sigma: float) -> list[float]:
    """Coefficients of E[(x + iY)^n], Y ~ N(0, sigma^2), as powers of x.

    Only even k survive: sum_k C(n,k) i^k E[Y^k] x^{n-k} with
    E[Y^k] = (k-1)!! sigma^k, so the result is real with alternating signs.
    Returned as coeffs[j] multiplying x^j.
    """
    coeffs = [0.0] * (n + 1)
    for k in range(0, n + 1, 2):
        half = k // 2
        dfact = math.factorial(k) / (2 ** half * math.factorial(half))
        sign = -1.0 if half % 2 else 1.0
        coeffs[n - k] = math.comb(n, k) * sign * dfact * sigma ** k
    return coeffs


def wick_order_icopy_exact(p: PolySeries, variances: Sequence[float] | None,
                           point: Sequence[float]) -> float:
    """:p(X):(x) = E[p(x + iY)] with the Y-expectation done in closed form.

    Real arithmetic throughout: odd powers of iY average to zero and even
    powers contribute (-1)^{k/2} (k-1)!! sigma^k.
    """
    sig = _sigmas(p.dim, variances)
    if len(point) != p.dim:
        raise DimensionMismatchError(f"point length {len(point)} != dim {p.dim}")
    total = 0.0
    for alpha, c in p._terms.items():
        term = c
        for i, m in alpha.entries:
            coeffs = _icopy_moment_poly(m, sig[i])
            x = float(point[i])
            acc = 0.0
            for j in range(m, -1, -1):
                acc = acc * x + coeffs[j]
            term *= acc
        total += term
    return total


def wick_order_icopy_mc(p: PolySeries, variances: Sequence[float] | None,
                        points: Sequence[Sequence[float]], n: int,
                        seed: int) -> list[Estimate]:
    """Monte Carlo over the imaginary copy: average Re p(x + iY).

    One chunked, deterministic pass of Y-samples is shared by all
    evaluation points; each point gets its own mean and standard error.
    The estimator is unbiased for :p(X):(x) at every truncation.
    """
    sig = np.asarray(_sigmas(p.dim, variances))
    pts = [np.asarray(x, dtype=float) for x in points]
    for x in pts:
        if x.shape != (p.dim,):
            raise DimensionMismatchError("point length does not match dim")
    if n < 2:
        raise ValueError("need at least 2 samples")
    max_exp = [0] * p.dim
    for alpha in p._terms:
        for i, m in alpha.entries:
            max_exp[i] = max(max_exp[i], m)

    layout = chunk_layout(n)
    parts: list[list[tuple[float, float, int]]] = [[] for _ in pts]
    for idx, rows in layout:
        y = chunk_normals(p.dim, seed, idx, rows) * sig
        for w, x in enumerate(pts):
            z = x + 1j * y
            # power tables per coordinate, then monomial assembly
            pows = []
            for i in range(p.dim):
                col = np.empty((max_exp[i] + 1, rows), dtype=complex)
                col[0] = 1.0
                for m in range(1, max_exp[i] + 1):
                    col[m] = col[m - 1] * z[:, i]
                pows.append(col)
            vals = np.zeros(rows, dtype=complex)
            for alpha, c in p._terms.items():
                term = np.full(rows, c, dtype=complex)
                for i, m in alpha.entries:
                    term = term * pows[i][m]
                vals += term
            re = vals.real
            parts[w].append((float(np.sum(re)), float(np.sum(re * re)), rows))

    out = []
    for w in range(len(pts)):
        s, ss, count = _pairwise_sum(parts[w])
        mean = s / count
        var = max(0.0, (ss - s * s / count) / (count - 1))
        out.append(Estimate(mean, math.sqrt(var / count), count, seed))
    return out


def series_condition(p: PolySeries,
                     variances: Sequence[float] | None = None) -> float:
    """sum_alpha alpha! a_alpha^2 prod_i v_i^{alpha_i}.

    Equals l2_norm(wick_order_poly(p, v))^2 exactly; finiteness of this sum
    is the convergence criterion for renormalizing a power series.
    """
    sig = _sigmas(p.dim, variances)
    total = 0.0
    for alpha, a in p._terms.items():
        w = a * a * alpha.factorial()
        for i, m in alpha.entries:
            w *= sig[i] ** (2 * m)
        total += w
    return total


def renorm_product_check(p: PolySeries, q: PolySeries,
                         variances: Sequence[float] | None = None) -> float:
    """max coefficient gap between :pq: and :p: <> :q: (zero in exact math)."""
    left = wick_order_poly(poly_mul(p, q), variances)
    right = wick_product(wick_order_poly(p, variances),
                         wick_order_poly(q, variances))
    return coeff_distance(left, right)


# -- quadratic Wick exponentials --------------------------------------------


def _tail_weight_square(lam: float, K: int) -> float:
    """L2 weight of the first omitted term, |lam|^{K+1} sqrt((2K+2)!) /
    (2^{K+1} (K+1)!), computed in log space."""
    if lam == 0.0:
        return 0.0
    ln = ((K + 1) * math.log(abs(lam)) + 0.5 * math.lgamma(2 * K + 3)
          - (K + 1) * math.log(2.0) - math.lgamma(K + 2))
    return math.exp(ln)


@dataclass(frozen=True)
class WickExpSquare:
    """:exp(lam x^2 / 2): in one Gaussian variable."""

    lam: float
    truncation: int
    series: ChaosVector
    tail_weight: float

    def closed(self, x: float) -> float:
        return (1.0 + self.lam) ** -0.5 * math.exp(
            self.lam * x * x / (2.0 * (1.0 + self.lam)))


def wick_exp_square(lam: float, K: int = 40) -> WickExpSquare:
    """Renormalized square exponential, series truncated after k = K.

    The L2 expansion sum_k lam^k/(2^k k!) H_2k converges iff |lam| < 1;
    outside that disc the request is refused rather than summed.
    """
    if abs(lam) >= 1.0:
        raise DivergenceError(
            f"series for :exp(lam x^2/2): diverges in L2 at |lam| = {abs(lam)} >= 1")
    if K < 0:
        raise ValueError("K must be >= 0")
    terms = {}
    w = 1.0
    for k in range(K + 1):
        if k:
            w *= lam / (2.0 * k)
        terms[MultiIndex(((0, 2 * k),)) if k else EMPTY] = w
    series = ChaosVector(1, 2 * K, terms, prune=0.0)
    return WickExpSquare(lam, K, series, _tail_weight_square(lam, K))


@dataclass(frozen=True)
class WickExpI2:
    """exp(-tr M/2) exp^<>(I_2(M)/2): the renormalized Gaussian quadratic
    exponential :exp(x'Mx/2): for a symmetric coefficient tensor M."""

    tensor: SymTensor
    eigenvalues: tuple[float, ...]
    basis: np.ndarray
    truncation: int
    series: ChaosVector

    def closed(self, point: Sequence[float]) -> float:
        x = np.asarray(point, dtype=float)
        if x.shape != (self.tensor.dim,):
            raise DimensionMismatchError("point length does not match dim")
        z = self.basis.T @ x
        out = 0.0
        for lam, zn in zip(self.eigenvalues, z):
            out += (-lam / 2.0 - 0.5 * math.log1p(lam)
                    + lam * zn * zn / (2.0 * (1.0 + lam)))
        return math.exp(out)


def _tensor_matrix(f: SymTensor) -> np.ndarray:
    m = np.zeros((f.dim, f.dim))
    for (i, j), v in f.values.items():
        m[i, j] = v
        m[j, i] = v
    return m


def wick_exp_I2(f: SymTensor, K: int = 30) -> WickExpI2:
    """Renormalized exponential of the quadratic form x'Mx/2.

    Requires every eigenvalue lam of M to satisfy lam > -1 (else the
    Gaussian integral behind the closed form diverges: DomainError) and
    |lam| < 1 (else the Hermite series diverges in L2: DivergenceError).
    The series carries the exp(-tr M/2) prefactor so that it matches the
    closed form pointwise.
    """
    if f.order != 2:
        raise ValueError("need an order-2 tensor")
    m = _tensor_matrix(f)
    w, v = jacobi_eigh(m)
    if w[0] <= -1.0:
        raise DomainError(
            f"eigenvalue {w[0]:.6g} <= -1: the renormalized exponential has no closed form")
    if max(abs(w[0]), abs(w[-1])) >= 1.0:
        raise DivergenceError(
            f"spectral radius {max(abs(w[0]), abs(w[-1])):.6g} >= 1: series diverges in L2")
    if K < 0:
        raise ValueError("K must be >= 0")
    series = ChaosVector.constant(1.0, f.dim, max(2 * K, 2))
    if K >= 1:
        half_i2 = scale(from_tensor(f, max_order=2 * K), 0.5)
        term = ChaosVector.constant(1.0, f.dim, 2 * K)
        for k in range(1, K + 1):
            term = scale(wick_product(term, half_i2), 1.0 / k)
            series = add(series, term)
    series = scale(series, math.exp(-0.5 * float(np.trace(m))))
    return WickExpI2(f, tuple(float(x) for x in w), v, K, series)


def negative_definite(f: SymTensor) -> bool:
    """True when every eigenvalue of the order-2 tensor is <= NEGDEF_TOL."""
    if f.order != 2:
        raise ValueError("need an order-2 tensor")
    w, _ = jacobi_eigh(_tensor_matrix(f))
    return bool(w[-1] <= NEGDEF_TOL)
