"""Partitions, the vertical-strip Pieri rule and the few Jack values we need.

Only column Jack polynomials are ever evaluated. ``P_{1^j}`` is the
elementary symmetric polynomial ``e_j`` for every Jack parameter, so its
principal specialisation is a binomial coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Optional, Sequence

from .algebra import UniPoly, as_rational
from .errors import UnsupportedShapeError


class Partition(tuple):
    """Weakly decreasing tuple of positive ints. Trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def column(cls, length: int) -> "Partition":
        """The single column ``1^length``."""
        return cls([1] * length)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def is_column(self) -> bool:
        return all(p == 1 for p in self)

    def doubled(self) -> "Partition":
        """``2 kappa``: every part doubled."""
        return Partition(2 * p for p in self)

    def squared(self) -> "Partition":
        """``kappa^2``: every part repeated twice."""
        return Partition(p for p in self for _ in range(2))

    def __repr__(self):
        return f"Partition({list(self)})"


SchurCombination = Dict[Partition, Fraction]


def vertical_strips(kappa: Sequence[int], m: int, max_rows: int) -> list[Partition]:
    """All ``lam`` with at most ``max_rows`` rows such that ``lam/kappa`` is a vertical m-strip."""
    kappa = Partition(kappa)
    if m < 0:
        raise ValueError("strip size must be nonnegative")
    if len(kappa) > max_rows:
        return []
    rows = min(len(kappa) + m, max_rows)
    base = list(kappa) + [0] * (rows - len(kappa))
    out = []
    for chosen in combinations(range(rows), m):
        lam = base[:]
        for r in chosen:
            lam[r] += 1
        if all(a >= b for a, b in zip(lam, lam[1:])):
            out.append(Partition(lam))
    return sorted(out, reverse=True)


def pieri_e(m: int, kappa: Sequence[int], n_vars: int) -> SchurCombination:
    """Schur expansion of ``e_m * s_kappa`` in ``n_vars`` variables."""
    return {lam: Fraction(1) for lam in vertical_strips(kappa, m, n_vars)}


def is_doubled(mu: Sequence[int]) -> Optional[Partition]:
    """Return ``kappa`` with ``mu == 2 kappa``, or None."""
    mu = Partition(mu)
    if any(p % 2 for p in mu):
        return None
    return Partition(p // 2 for p in mu)


def is_squared(mu: Sequence[int]) -> Optional[Partition]:
    """Return ``kappa`` with ``mu == kappa^2``, or None."""
    mu = Partition(mu)
    if len(mu) % 2:
        return None
    evens, odds = mu[0::2], mu[1::2]
    if evens != odds:
        return None
    return Partition(evens)


def jack_column_principal(j: int, n_vars: int) -> Fraction:
    """``P_{1^j}(1^n_vars)``, independent of the Jack parameter."""
    if j < 0 or j > n_vars:
        raise ValueError(f"column length {j} outside 0..{n_vars}")
    return Fraction(comb(n_vars, j))


def jack_principal(kappa: Sequence[int], n_vars: int) -> Fraction:
    kappa = Partition(kappa)
    if not kappa.is_column():
        raise UnsupportedShapeError(f"principal specialisation only implemented for columns, got {kappa}")
    return jack_column_principal(len(kappa), n_vars)


def charpoly_schur_expansion(n_vars: int) -> dict[Partition, UniPoly]:
    """``det(z I - G) = sum_l z^(N-l) (-1)^l s_{1^l}(G)`` as a Schur series with polynomial coefficients."""
    return {
        Partition.column(l): UniPoly.monomial(n_vars - l, (-1) ** l)
        for l in range(n_vars + 1)
    }


def _det(rows: list[list[Fraction]]) -> Fraction:
    a = [r[:] for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def schur_eval_oracle(kappa: Sequence[int], x: Sequence) -> Fraction:
    """Exact ``s_kappa(x)`` as a ratio of alternants. Needs distinct ``x``."""
    kappa = Partition(kappa)
    xs = [as_rational(v) for v in x]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("alternant formula needs pairwise distinct points")
    if len(kappa) > n:
        return Fraction(0)
    parts = list(kappa) + [0] * (n - len(kappa))
    num = _det([[xi ** (parts[j] + n - 1 - j) for j in range(n)] for xi in xs])
    den = _det([[xi ** (n - 1 - j) for j in range(n)] for xi in xs])
    return num / den
