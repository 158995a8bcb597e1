"""Monte Carlo estimates of characteristic-polynomial averages.

Samples are drawn in fixed-size chunks. Chunk ``i`` draws from its own
generator seeded by ``SeedSequence(seed, spawn_key=(i,))`` and is reduced to
``(count, mean, M2)``; chunks are merged in index order. The report is
therefore bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import samplers
from .algebra import UniPoly, format_rational, poly_shift_mul
from .derive import derive_even, derive_odd
from .ensemble import EnsembleSpec
from .errors import GuardError

CHUNK_SIZE = 1 << 15
MIN_SAMPLES = 1000
SPHERICAL_MARGIN = 2
THREADS_ENV = "SKEWOP_THREADS"
WHICH = ("charpoly", "charpoly-times-trace")


def charpoly_coeffs(g):
    """Ascending coefficients of ``det(zI - G)`` by Faddeev-LeVerrier.

    Accepts one matrix or a stack ``(..., d, d)``. The ``z^d`` coefficient is
    exactly 1.
    """
    g = np.asarray(g)
    if g.shape[-1] != g.shape[-2]:
        raise ValueError("charpoly needs square matrices")
    if not np.all(np.isfinite(g)):
        raise ValueError("non-finite matrix entries")
    d = g.shape[-1]
    dtype = np.result_type(g.dtype, np.float64)
    coeffs = np.zeros((*g.shape[:-2], d + 1), dtype=dtype)
    coeffs[..., d] = 1
    eye = np.eye(d, dtype=dtype)
    m = np.zeros_like(g, dtype=dtype)
    for k in range(1, d + 1):
        m = g @ m + coeffs[..., d - k + 1, None, None] * eye
        coeffs[..., d - k] = -np.trace(g @ m, axis1=-2, axis2=-1) / k
    return coeffs


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# -- specs -> samplers ----------------------------------------------------

def _as_int(x: Fraction, what: str) -> int:
    if Fraction(x).denominator != 1:
        raise ValueError(f"{what} must be an integer for sampling, got {x}")
    return int(x)


def spherical_guard(spec: EnsembleSpec) -> None:
    """Refuse heavy-tailed spherical parameters (conservative, not sharp)."""
    p = spec.params
    gap = p["a2"] - (2 * spec.n + p["a1"] + Fraction(1, 2))
    if gap < SPHERICAL_MARGIN:
        raise GuardError(
            f"spherical moment guard: a2 - (2n + a1 + 1/2) = {gap} < {SPHERICAL_MARGIN} "
            f"for {spec}; the estimator variance may be infinite"
        )


def make_sampler(spec: EnsembleSpec, allow_quaternion_spherical: bool = False
                 ) -> Callable[[np.random.Generator, int], tuple[np.ndarray, int]]:
    """Batch sampler for ``spec``; returns ``(matrices, redraw_count)``."""
    n, p, real = spec.n, spec.params, spec.is_real
    fk = spec.field_kind
    d = 2 * n if real else n
    if spec.family == "ginibre":
        draw = samplers.sample_real_ginibre if real else samplers.sample_quaternion_ginibre
        return lambda rng, k: (draw(d, rng, k), 0)
    if spec.family == "induced":
        extra = 2 * p["alpha"] if real else p["alpha"]
        m_rows = d + _as_int(extra, "2*alpha" if real else "alpha")
        return lambda rng, k: (samplers.sample_induced(fk, d, m_rows, rng, k), 0)
    if spec.family == "spherical":
        if p["a1"] != 0:
            raise ValueError("only a1 = 0 has a matrix sampler")
        if not real and not allow_quaternion_spherical:
            raise ValueError("quaternion spherical sampling is advisory; pass the explicit opt-in flag")
        m1 = _as_int(2 * p["a2"] - d if real else p["a2"] - d, "m1")
        if m1 < d:
            raise ValueError(f"a2={p['a2']} gives m1={m1} < {d}")
        return lambda rng, k: samplers.sample_spherical(fk, d, m1, rng, k, return_resampled=True)
    if p["b1"] != 0:
        raise ValueError("only b1 = 0 has a matrix sampler")
    k_total = _as_int(2 * p["b2"] + 2 * d + 1 if real else p["b2"] + 2 * d - Fraction(1, 2), "K")
    return lambda rng, k: (samplers.sample_antispherical(fk, d, k_total, rng, k), 0)


def spherical_from_m1(field_kind: str, n: int, m1: int) -> EnsembleSpec:
    a2 = Fraction(m1 + 2 * n, 2) if field_kind == "real" else Fraction(m1 + n)
    return EnsembleSpec(field_kind, "spherical", n, {"a1": 0, "a2": a2})


def antispherical_from_k(field_kind: str, n: int, k_total: int) -> EnsembleSpec:
    if field_kind == "real":
        b2 = Fraction(k_total - 4 * n - 1, 2)
    else:
        b2 = Fraction(k_total - 2 * n) + Fraction(1, 2)
    return EnsembleSpec(field_kind, "antispherical", n, {"b1": 0, "b2": b2})


def induced_from_m(field_kind: str, n: int, m_rows: int) -> EnsembleSpec:
    alpha = Fraction(m_rows - 2 * n, 2) if field_kind == "real" else Fraction(m_rows - n)
    return EnsembleSpec(field_kind, "induced", n, {"alpha": alpha})


# -- streaming statistics ---------------------------------------------------

@dataclass
class Moments:
    """Per-coefficient count, mean and sum of squared deviations."""

    count: int
    mean: np.ndarray
    m2: np.ndarray

    @classmethod
    def of(cls, x: np.ndarray) -> "Moments":
        mean = x.mean(axis=0)
        return cls(x.shape[0], mean, ((x - mean) ** 2).sum(axis=0))

    def merge(self, other: "Moments") -> "Moments":
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / n)
        m2 = self.m2 + other.m2 + delta ** 2 * (self.count * other.count / n)
        return Moments(n, mean, m2)

    def std_error(self) -> np.ndarray:
        return np.sqrt(self.m2 / (self.count - 1) / self.count)


@dataclass
class McReport:
    ensemble: str
    n: int
    params: dict
    which: str
    target: list
    target_exact: list
    estimates: list
    std_errors: list
    z_scores: list
    n_samples: int
    seed: int
    sigma_threshold: float
    verdict: str
    max_imag: float = 0.0
    resampled: int = 0
    chunk_size: int = CHUNK_SIZE

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


def mc_target(spec: EnsembleSpec, which: str) -> UniPoly:
    if which == "charpoly":
        return derive_even(spec)
    if which == "charpoly-times-trace":
        return derive_odd(spec) - poly_shift_mul(derive_even(spec), 1)
    raise ValueError(f"unknown estimand {which!r}; choose from {WHICH}")


def _chunk(sampler, which: str, seed: int, index: int, count: int):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
    g, redrawn = sampler(rng, count)
    c = charpoly_coeffs(g)
    if which == "charpoly-times-trace":
        c = c * np.trace(g, axis1=-2, axis2=-1)[:, None]
    max_imag = float(np.max(np.abs(c.imag))) if np.iscomplexobj(c) else 0.0
    return Moments.of(np.ascontiguousarray(c.real)), redrawn, max_imag


def _z_scores(est, se, target):
    z = np.empty_like(est)
    for i, (e, s, t) in enumerate(zip(est, se, target)):
        if s > 0:
            z[i] = (e - t) / s
        else:
            z[i] = 0.0 if abs(e - t) <= 1e-12 * max(1.0, abs(t)) else math.inf
    return z


def mc_estimate(spec: EnsembleSpec, which: str, n_samples: int, seed: int,
                sigma_threshold: float = 4.0, workers: int | None = None,
                allow_quaternion_spherical: bool = False) -> McReport:
    """Estimate ``<det(zI - G)>`` or ``<det(zI - G) Tr G>`` and compare with the exact target."""
    if n_samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    if spec.family == "spherical":
        spherical_guard(spec)
    target_poly = mc_target(spec, which)
    sampler = make_sampler(spec, allow_quaternion_spherical)
    seed = int(seed) & (2**64 - 1)

    sizes = [CHUNK_SIZE] * (n_samples // CHUNK_SIZE)
    if n_samples % CHUNK_SIZE:
        sizes.append(n_samples % CHUNK_SIZE)
    workers = workers or default_workers()
    jobs = [(sampler, which, seed, i, k) for i, k in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda a: _chunk(*a), jobs))
    else:
        results = [_chunk(*a) for a in jobs]

    total = results[0][0]
    for mom, _, _ in results[1:]:
        total = total.merge(mom)
    redrawn = sum(r[1] for r in results)
    max_imag = max(r[2] for r in results)

    degrees = range(spec.matrix_dim + 1)
    target = np.array([float(target_poly.coeff(k)) for k in degrees])
    se = total.std_error()
    z = _z_scores(total.mean, se, target)
    verdict = "pass" if np.all(np.abs(z) <= sigma_threshold) else "fail"
    return McReport(
        ensemble=spec.tag, n=spec.n,
        params={k: format_rational(v) for k, v in spec.params.items()},
        which=which,
        target=target.tolist(),
        target_exact=[format_rational(target_poly.coeff(k)) for k in degrees],
        estimates=total.mean.tolist(),
        std_errors=se.tolist(),
        z_scores=z.tolist(),
        n_samples=n_samples, seed=seed, sigma_threshold=float(sigma_threshold),
        verdict=verdict, max_imag=max_imag, resampled=redrawn,
    )
