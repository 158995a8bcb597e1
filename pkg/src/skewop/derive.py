"""Skew orthogonal polynomials as characteristic-polynomial averages.

``derive_even``/``derive_odd`` expand ``det(zI - G)`` (and its product with
``Tr G``) in Schur polynomials, keep only the terms the invariant matrix
average lets through, and evaluate those with Selberg-type Jack averages.
``closed_form`` evaluates the known explicit formulas. The two routes share
nothing beyond the rational kernel, so agreement is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

from .algebra import UniPoly, gamma_ratio, poly_shift_mul
from .ensemble import EnsembleSpec, FAMILIES, FIELD_KINDS
from .errors import ConsistencyError, PoleError
from .jack import jack_average, jack_average_normalized, matrix_weight_to_density
from .symfunc import (
    Partition,
    charpoly_schur_expansion,
    is_doubled,
    is_squared,
    jack_column_principal,
    pieri_e,
)

Z = UniPoly.monomial(1)


@dataclass(frozen=True)
class SkewPolyPair:
    q_even: UniPoly
    q_odd: UniPoly

    def __post_init__(self):
        for name, p, parity in (("q_even", self.q_even, "is_even"), ("q_odd", self.q_odd, "is_odd")):
            if not p.is_monic():
                raise ConsistencyError(f"{name} is not monic: {p}")
            if not getattr(p, parity)():
                raise ConsistencyError(f"{name} has the wrong parity: {p}")


# -- derivation route -----------------------------------------------------

SchurSeries = Mapping[Partition, UniPoly]


def charpoly_series(spec: EnsembleSpec) -> dict[Partition, UniPoly]:
    return charpoly_schur_expansion(spec.matrix_dim)


def trace_series(spec: EnsembleSpec) -> dict[Partition, UniPoly]:
    """Schur series of ``det(zI - G) Tr G`` via the Pieri rule with ``e_1``."""
    N = spec.matrix_dim
    out: dict[Partition, UniPoly] = {}
    for kappa, coeff in charpoly_series(spec).items():
        for lam, mult in pieri_e(1, kappa, N).items():
            out[lam] = out.get(lam, UniPoly()) + coeff * mult
    return {lam: c for lam, c in out.items() if not c.is_zero()}


def schur_average(spec: EnsembleSpec, mu: Partition) -> Fraction:
    """``<s_mu(G)>`` over the ensemble.

    Real ensembles only see ``mu = 2 kappa`` and quaternion ensembles only
    ``mu = kappa^2``; the surviving value is ``<P_kappa(H)> / P_kappa(1^N)``.
    """
    density = matrix_weight_to_density(spec)
    kappa = is_doubled(mu) if spec.is_real else is_squared(mu)
    if kappa is None or len(kappa) > density.n_vars:
        return Fraction(0)
    if kappa.is_column():
        return jack_average(density, kappa) / jack_column_principal(len(kappa), density.n_vars)
    return jack_average_normalized(density, kappa)


def average_series(spec: EnsembleSpec, series: SchurSeries) -> UniPoly:
    total = UniPoly()
    for mu, coeff in series.items():
        value = schur_average(spec, mu)
        if value:
            total = total + coeff * value
    return total


def derive_even(spec: EnsembleSpec) -> UniPoly:
    """``Q_{2n}(z) = <det(zI - G)>``."""
    return average_series(spec, charpoly_series(spec))


def trace_average(spec: EnsembleSpec) -> UniPoly:
    """``<det(zI - G) Tr G>``."""
    return average_series(spec, trace_series(spec))


def check_quaternion_cancellation(spec: EnsembleSpec, z_even: UniPoly, trace_avg: UniPoly) -> None:
    """Every term of ``z Q_{2n}`` except the top one must be cancelled by ``<det Tr>``."""
    top = 2 * spec.n + 1
    if z_even.coeff(top) != 1 or trace_avg.coeff(top) != 0:
        raise ConsistencyError(f"{spec}: unexpected leading terms")
    for k in sorted(set(z_even.terms) | set(trace_avg.terms)):
        if k != top and z_even.coeff(k) + trace_avg.coeff(k) != 0:
            raise ConsistencyError(
                f"{spec}: no cancellation at z^{k}: {z_even.coeff(k)} vs {trace_avg.coeff(k)}"
            )


def derive_odd(spec: EnsembleSpec) -> UniPoly:
    """``Q_{2n+1}(z) = z Q_{2n}(z) + <det(zI - G) Tr G>``."""
    z_even = poly_shift_mul(derive_even(spec), 1)
    tr = trace_average(spec)
    if not spec.is_real:
        check_quaternion_cancellation(spec, z_even, tr)
    return z_even + tr


def derive(spec: EnsembleSpec) -> SkewPolyPair:
    return SkewPolyPair(derive_even(spec), derive_odd(spec))


# -- closed forms ---------------------------------------------------------

def _real_odd_coefficient(spec: EnsembleSpec) -> Fraction:
    n, p = spec.n, spec.params
    if spec.family == "ginibre":
        return Fraction(2 * n)
    if spec.family == "induced":
        return 2 * (n + p["alpha"])
    if spec.family == "spherical":
        den = p["a2"] - (2 * n + p["a1"] + Fraction(1, 2))
        if den == 0:
            raise PoleError("spherical denominator vanishes", n=n, a1=p["a1"], a2=p["a2"])
        return (p["a1"] + n) / den
    den = p["b2"] + (2 * n + p["b1"] + Fraction(1, 2))
    if den == 0:
        raise PoleError("anti-spherical denominator vanishes", n=n, b1=p["b1"], b2=p["b2"])
    return (p["b1"] + n) / den


def _quaternion_even_coefficients(spec: EnsembleSpec) -> dict[int, Fraction]:
    """Coefficient of ``z^(2j)`` in ``Q_{2n}`` for ``j = 0..n``."""
    n, p = spec.n, spec.params
    half = Fraction(1, 2)
    out = {}
    for j in range(n + 1):
        if spec.family in ("ginibre", "induced"):
            a = p.get("alpha", 0)
            c = 2 ** (n - j) * gamma_ratio(n + 1 + a, j + 1 + a)
        elif spec.family == "spherical":
            a1, shift = p["a1"], p["a1"] - p["a2"]
            c = (-1) ** (n - j) * gamma_ratio(a1 + n + 1, j + 1 + a1) * gamma_ratio(
                n + j + half + shift, 2 * n + half + shift
            )
        else:
            b1, shift = p["b1"], p["b1"] + p["b2"]
            c = gamma_ratio(b1 + n + 1, j + 1 + b1) * gamma_ratio(n + j + half + shift, 2 * n + half + shift)
        out[2 * j] = c
    return out


def closed_form(spec: EnsembleSpec) -> SkewPolyPair:
    n = spec.n
    if spec.is_real:
        even = UniPoly.monomial(2 * n)
        odd = UniPoly({2 * n + 1: 1, 2 * n - 1: -_real_odd_coefficient(spec)})
    else:
        even = UniPoly(_quaternion_even_coefficients(spec))
        odd = UniPoly.monomial(2 * n + 1)
    return SkewPolyPair(even, odd)


# -- comparison -----------------------------------------------------------

@dataclass(frozen=True)
class Comparison:
    spec: EnsembleSpec
    equal: bool
    which: Optional[str] = None
    degree: Optional[int] = None
    derived: Optional[Fraction] = None
    closed: Optional[Fraction] = None

    def __bool__(self):
        return self.equal

    def describe(self) -> str:
        if self.equal:
            return f"{self.spec}: equal"
        return (f"{self.spec}: {self.which} differs at z^{self.degree}: "
                f"derived {self.derived}, closed form {self.closed}")


def first_difference(a: UniPoly, b: UniPoly) -> Optional[int]:
    for k in sorted(set(a.terms) | set(b.terms)):
        if a.coeff(k) != b.coeff(k):
            return k
    return None


def check_equal(spec: EnsembleSpec, closed: Callable[[EnsembleSpec], SkewPolyPair] = closed_form) -> Comparison:
    """Compare the derivation with the closed form, exactly."""
    got = derive(spec)
    want = closed(spec)
    for which in ("even", "odd"):
        a, b = getattr(got, f"q_{which}"), getattr(want, f"q_{which}")
        k = first_difference(a, b)
        if k is not None:
            return Comparison(spec, False, which, k, a.coeff(k), b.coeff(k))
    return Comparison(spec, True)


@dataclass
class GridReport:
    checked: list[Comparison] = field(default_factory=list)
    excluded: list[tuple[EnsembleSpec, str]] = field(default_factory=list)

    @property
    def failures(self) -> list[Comparison]:
        return [c for c in self.checked if not c.equal]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_grid(specs: Iterable[EnsembleSpec],
               closed: Callable[[EnsembleSpec], SkewPolyPair] = closed_form) -> GridReport:
    """Check every spec; points where either route hits a pole are excluded and listed."""
    report = GridReport()
    for spec in specs:
        try:
            closed(spec)
            derive(spec)
        except PoleError as exc:
            report.excluded.append((spec, str(exc)))
            continue
        report.checked.append(check_equal(spec, closed))
    return report


HALF_STEPS = tuple(Fraction(k, 2) for k in range(3, 21))  # 3/2, 2, ..., 10

DEFAULT_GRID = {
    "alpha": (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3), Fraction(7, 2), Fraction(10)),
    "a1": (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(5, 2)),
    "a2-offset": HALF_STEPS,
    "b1": (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(5, 2)),
    "b2": (Fraction(1, 2), Fraction(1), Fraction(3), Fraction(11, 2)),
}


def grid_specs(n_max: int, grid: Mapping[str, Iterable[Fraction]] | None = None,
               tags: Iterable[str] | None = None) -> list[EnsembleSpec]:
    """Enumerate specs for ``n = 1..n_max`` over a parameter grid.

    ``a2`` values are absolute when given as ``"a2"``; the default uses
    ``"a2-offset"``, meaning ``a2 = 2n + a1 + offset``.
    """
    g = dict(DEFAULT_GRID)
    if grid:
        g.update(grid)
        if "a2" in grid:
            g.pop("a2-offset", None)
    wanted = set(tags) if tags else None
    out = []
    for fam in FAMILIES:
        for fk in FIELD_KINDS:
            for n in range(1, n_max + 1):
                for params in _family_points(fam, n, g):
                    spec = EnsembleSpec(fk, fam, n, params)
                    if wanted is None or spec.tag in wanted:
                        out.append(spec)
    return out


def _family_points(family: str, n: int, g: Mapping) -> list[dict]:
    if family == "ginibre":
        return [{}]
    if family == "induced":
        return [{"alpha": a} for a in g["alpha"]]
    if family == "spherical":
        if "a2" in g:
            return [{"a1": a1, "a2": a2} for a1 in g["a1"] for a2 in g["a2"]]
        return [{"a1": a1, "a2": 2 * n + a1 + off} for a1 in g["a1"] for off in g["a2-offset"]]
    return [{"b1": b1, "b2": b2} for b1 in g["b1"] for b2 in g["b2"]]


# -- reductions to earlier parametrisations --------------------------------

LITERATURE_KINDS = ("spherical-induced", "antispherical", "antispherical-induced")


@dataclass(frozen=True)
class LiteratureCheck:
    kind: str
    spec: EnsembleSpec
    expected_odd: UniPoly
    closed: SkewPolyPair
    derived: SkewPolyPair

    @property
    def equal(self) -> bool:
        even = UniPoly.monomial(2 * self.spec.n)
        return (self.closed.q_odd == self.expected_odd == self.derived.q_odd
                and self.closed.q_even == even == self.derived.q_even)

    def __bool__(self):
        return self.equal


def literature_spec(kind: str, n: int, params: Mapping) -> tuple[EnsembleSpec, Fraction]:
    """Map an earlier parametrisation onto a real spec plus the expected ``z^(2n-1)`` coefficient."""
    p = {k: Fraction(v) for k, v in params.items()}
    if kind == "spherical-induced":
        L, m = p["L"], p["m"]
        spec = EnsembleSpec("real", "spherical", n, {"a1": L / 2, "a2": (m + L + 2 * n) / 2})
        den = m - 2 * n - 1
        if den == 0:
            raise PoleError("substitution hits a pole", L=L, m=m, n=n)
        return spec, (2 * n + L) / den
    if kind == "antispherical":
        L = p["L"]
        spec = EnsembleSpec("real", "antispherical", n, {"b1": 0, "b2": (L - 2 * n - 1) / 2})
        if L + 2 * n == 0:
            raise PoleError("substitution hits a pole", L=L, n=n)
        return spec, 2 * n / (L + 2 * n)
    if kind == "antispherical-induced":
        L1, L2 = p["L1"], p["L2"]
        spec = EnsembleSpec("real", "antispherical", n, {"b1": L1 / 2, "b2": (L2 - 2 * n - 1) / 2})
        if L1 + L2 + 2 * n == 0:
            raise PoleError("substitution hits a pole", L1=L1, L2=L2, n=n)
        return spec, (2 * n + L1) / (L1 + L2 + 2 * n)
    raise ValueError(f"unknown reduction {kind!r}; choose from {', '.join(LITERATURE_KINDS)}")


def literature_reduction(kind: str, params: Mapping, n: int) -> LiteratureCheck:
    spec, c = literature_spec(kind, n, params)
    expected = UniPoly({2 * n + 1: 1, 2 * n - 1: -c})
    return LiteratureCheck(kind, spec, expected, closed_form(spec), derive(spec))
