"""Generalised Pochhammer symbols and Jack-polynomial averages over
Selberg-type eigenvalue densities.

An :class:`EigenDensity` with Jack parameter ``alpha`` is the ensemble with
eigenvalue PDF proportional to ``prod g(x_l/scale) prod |x_k - x_j|^(2/alpha)``
where ``g`` is one of

* ``jacobi``:  ``x^l1 (1 - x)^l2`` on (0, 1)
* ``laguerre``: ``x^l1 exp(-x)`` on (0, inf)
* ``cauchy``:   ``x^l1 (1 + x)^(-l2)`` on (0, inf)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import as_rational, gamma_ratio
from .ensemble import EnsembleSpec
from .errors import PoleError
from .symfunc import Partition, jack_principal

FAMILIES = ("jacobi", "laguerre", "cauchy")


@dataclass(frozen=True)
class EigenDensity:
    family: str
    lambda1: Fraction
    lambda2: Fraction
    jack_alpha: Fraction
    n_vars: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown density family {self.family!r}")
        for name in ("lambda1", "lambda2", "jack_alpha", "scale"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.jack_alpha <= 0:
            raise ValueError("Jack parameter must be positive")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.n_vars < 1:
            raise ValueError("need at least one variable")

    @property
    def beta(self) -> Fraction:
        return 2 / self.jack_alpha


@dataclass(frozen=True)
class PochhammerSpec:
    u: Fraction
    kappa: Partition
    jack_alpha: Fraction
    n_vars: int

    def __post_init__(self):
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "jack_alpha", as_rational(self.jack_alpha))
        object.__setattr__(self, "kappa", Partition(self.kappa))
        if len(self.kappa) > self.n_vars:
            raise ValueError(f"{self.kappa} has more than {self.n_vars} rows")


def pochhammer_general(spec: PochhammerSpec) -> Fraction:
    """``[u]_kappa = prod_j Gamma(u - (j-1)/alpha + kappa_j) / Gamma(u - (j-1)/alpha)``."""
    out = Fraction(1)
    for row, part in enumerate(spec.kappa, start=1):
        base = spec.u - Fraction(row - 1) / spec.jack_alpha
        try:
            out *= gamma_ratio(base + part, base)
        except PoleError as exc:
            raise PoleError("Pochhammer factor at a pole", row=row, u=spec.u, kappa=tuple(spec.kappa)) from exc
    return out


def _row_factors(u: Fraction, kappa: Partition, density: EigenDensity) -> list[Fraction]:
    return [
        gamma_ratio(u - Fraction(r) / density.jack_alpha + part, u - Fraction(r) / density.jack_alpha)
        for r, part in enumerate(kappa)
    ]


def _poch(u, kappa, density: EigenDensity) -> Fraction:
    return pochhammer_general(PochhammerSpec(u, kappa, density.jack_alpha, density.n_vars))


def _checked_denominator(v: Fraction, kappa: Partition, density: EigenDensity) -> Fraction:
    factors = _row_factors(v, kappa, density)
    for row, f in enumerate(factors, start=1):
        if f == 0:
            raise PoleError(
                "divergent Selberg-type average",
                family=density.family, lambda1=density.lambda1, lambda2=density.lambda2,
                kappa=tuple(kappa), row=row,
            )
    out = Fraction(1)
    for f in factors:
        out *= f
    return out


def jack_average_normalized(density: EigenDensity, kappa: Sequence[int]) -> Fraction:
    """``<P_kappa> / P_kappa(1^N)``; valid for every partition shape."""
    kappa = Partition(kappa)
    if len(kappa) > density.n_vars:
        raise ValueError(f"{kappa} does not fit in {density.n_vars} variables")
    N, a = density.n_vars, density.jack_alpha
    l1, l2 = density.lambda1, density.lambda2
    u = l1 + Fraction(N - 1) / a + 1
    value = _poch(u, kappa, density)
    if density.family == "jacobi":
        v = l1 + l2 + 2 * Fraction(N - 1) / a + 2
        value /= _checked_denominator(v, kappa, density)
    elif density.family == "cauchy":
        v = -l2 + l1 + 2 + 2 * Fraction(N - 1) / a
        value /= (-1) ** kappa.weight * _checked_denominator(v, kappa, density)
    return value * density.scale ** kappa.weight


def jack_average(density: EigenDensity, kappa: Sequence[int]) -> Fraction:
    """Average of ``P_kappa^(alpha)(x_1..x_N)`` including the ``P_kappa(1^N)`` prefactor.

    The prefactor is only known in closed form for column shapes; other
    shapes raise :class:`UnsupportedShapeError` (use
    :func:`jack_average_normalized`).
    """
    kappa = Partition(kappa)
    prefactor = jack_principal(kappa, density.n_vars)
    return prefactor * jack_average_normalized(density, kappa)


def matrix_weight_to_density(spec: EnsembleSpec) -> EigenDensity:
    """Eigenvalue density of ``H = G G^T`` (real) or ``G G^dagger`` (quaternion).

    The real Jacobian contributes ``det(H)^(-1/2)`` and the Gaussian
    ``exp(-x/2)`` is rescaled to ``exp(-x)`` via ``scale=2``. For quaternion
    matrices ``H`` has ``n`` doubly degenerate eigenvalues; the Jacobian is
    one power of each and the complex-representation determinants in the
    weights contribute squared factors.
    """
    p = spec.params
    if spec.is_real:
        N, a = 2 * spec.n, Fraction(2)
        half = Fraction(-1, 2)
        if spec.family == "ginibre":
            return EigenDensity("laguerre", half, 0, a, N, 2)
        if spec.family == "induced":
            return EigenDensity("laguerre", half + p["alpha"], 0, a, N, 2)
        if spec.family == "spherical":
            return EigenDensity("cauchy", half + p["a1"], p["a2"], a, N)
        if spec.family == "antispherical":
            return EigenDensity("jacobi", half + p["b1"], p["b2"], a, N)
    else:
        N, a = spec.n, Fraction(1, 2)
        if spec.family == "ginibre":
            return EigenDensity("laguerre", 1, 0, a, N)
        if spec.family == "induced":
            return EigenDensity("laguerre", 1 + 2 * p["alpha"], 0, a, N)
        if spec.family == "spherical":
            return EigenDensity("cauchy", 1 + 2 * p["a1"], 2 * p["a2"], a, N)
        if spec.family == "antispherical":
            return EigenDensity("jacobi", 1 + 2 * p["b1"], 2 * p["b2"], a, N)
    raise ValueError(f"unknown ensemble {spec.tag!r}")
