"""Multiple Stratonovich integrals and the trace formula.

The Stratonovich integral of a symmetric order-n tensor is the plain
product sum S_n(f) = sum_{i_1..i_n} f[i_1..i_n] e~_{i_1} ... e~_{i_n}
(no Wick correction).  It expands over Ito integrals of traced tensors:

    S_n(f) = sum_{2k <= n} n!/(2^k k! (n-2k)!) I_{n-2k}(Tr^k f)

with the inverse carrying alternating signs.  Tr contracts one pair of
slots against the identity of R^d.
"""

from __future__ import annotations

import math

from .chaos import ChaosVector, add, from_tensor, ordinary_product, scale
from .tensors import SymTensor, ordered_count


def hu_meyer_coeff(n: int, k: int) -> float:
    """n! / (2^k k! (n-2k)!), the count of pairings of k slot-pairs."""
    if n < 0 or k < 0 or 2 * k > n:
        raise ValueError(f"need 0 <= 2k <= n, got n={n}, k={k}")
    return math.factorial(n) / (2 ** k * math.factorial(k) * math.factorial(n - 2 * k))


def trace(f: SymTensor) -> SymTensor:
    """(Tr f)[t] = sum_i f[t + (i, i)], one diagonal contraction."""
    if f.order < 2:
        raise ValueError("trace needs order >= 2")
    vals: dict[tuple[int, ...], float] = {}
    for t in _candidate_tuples(f):
        s = 0.0
        for i in range(f.dim):
            s += f.value(tuple(sorted(t + (i, i))))
        if s != 0.0:
            vals[t] = s
    return SymTensor(f.dim, f.order - 2, vals, prune=0.0)


def _candidate_tuples(f: SymTensor):
    """Sorted tuples that can carry a nonzero trace entry of f."""
    seen = set()
    for t in f.values:
        # remove any two positions; the remaining order-2 slots are candidates
        for a in range(len(t)):
            for b in range(a + 1, len(t)):
                rest = tuple(t[i] for i in range(len(t)) if i != a and i != b)
                seen.add(rest)
    return sorted(seen)


def trace_k(f: SymTensor, k: int) -> SymTensor:
    """Tr^k f, k repeated diagonal contractions."""
    if k < 0 or 2 * k > f.order:
        raise ValueError(f"need 0 <= 2k <= order, got k={k}, order={f.order}")
    out = f
    for _ in range(k):
        out = trace(out)
    return out


def stratonovich_integral(f: SymTensor) -> ChaosVector:
    """S_n(f) as a chaos expansion, assembled from the trace formula."""
    n = f.order
    out = ChaosVector.zero(f.dim, n)
    for k in range(n // 2 + 1):
        g = trace_k(f, k)
        out = add(out, scale(from_tensor(g, max_order=n), hu_meyer_coeff(n, k)))
    return out


def ito_from_stratonovich(f: SymTensor) -> ChaosVector:
    """I_n(f) rebuilt from Stratonovich integrals of traced tensors.

    I_n(f) = sum_k (-1)^k n!/(2^k k! (n-2k)!) S_{n-2k}(Tr^k f); composing
    with the forward formula must return from_tensor(f).
    """
    n = f.order
    out = ChaosVector.zero(f.dim, n)
    for k in range(n // 2 + 1):
        g = trace_k(f, k)
        sign = -1.0 if k % 2 else 1.0
        out = add(out, scale(stratonovich_integral(g), sign * hu_meyer_coeff(n, k)))
    return out


def stratonovich_partial_sum(f: SymTensor, n_basis: int) -> ChaosVector:
    """S_n restricted to the first n_basis coordinates, built literally.

    Sum over index tuples with every entry < n_basis of f[t] times the
    ordinary product of the coordinate Gaussians; each stored sorted tuple
    carries its ordered-count multiplicity.  At n_basis = dim this is the
    full product sum, whose agreement with the trace formula is the
    content of the Hu-Meyer identity; tensors supported on fewer
    coordinates stabilize earlier.
    """
    if not 0 <= n_basis <= f.dim:
        raise ValueError(f"need 0 <= n_basis <= dim, got {n_basis}")
    n = f.order
    dim = f.dim
    out = ChaosVector.zero(dim, n)
    for t, v in f.values.items():
        if any(j >= n_basis for j in t):
            continue
        prod = ChaosVector.constant(1.0, dim, n)
        for j in t:
            prod = ordinary_product(prod, ChaosVector.coordinate(j, dim, n))
        out = add(out, scale(prod, ordered_count(t) * v))
    return out
