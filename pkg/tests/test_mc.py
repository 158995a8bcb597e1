from fractions import Fraction as F

import numpy as np
import pytest

from skewop.ensemble import EnsembleSpec
from skewop.errors import GuardError
from skewop.mc import (
    Moments,
    antispherical_from_k,
    charpoly_coeffs,
    induced_from_m,
    mc_estimate,
    mc_target,
    spherical_from_m1,
)
from skewop.algebra import UniPoly

SAMPLES = 200_000


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def charpoly_oracle(a):
    """Coefficients of det(zI - A) by exact interpolation of cofactor determinants."""
    d = len(a)
    pts = list(range(d + 1))
    vals = [cofactor_det([[F(int(i == j)) * z - a[i][j] for j in range(d)] for i in range(d)]) for z in pts]
    # Lagrange interpolation in exact arithmetic
    poly = UniPoly()
    for i, zi in enumerate(pts):
        basis = UniPoly.constant(1)
        for j, zj in enumerate(pts):
            if i != j:
                basis = basis * UniPoly({1: 1, 0: -zj}) * F(1, zi - zj)
        poly = poly + basis * vals[i]
    return [float(poly.coeff(k)) for k in range(d + 1)]


def test_charpoly_trivial():
    assert np.array_equal(charpoly_coeffs(np.zeros((4, 4))), [0, 0, 0, 0, 1])
    assert np.allclose(charpoly_coeffs(np.eye(3)), [-1, 3, -3, 1])


def test_charpoly_against_cofactor_oracle():
    a = [[F(1, 2), F(-3), F(2, 7)], [F(5), F(1, 3), F(-1)], [F(4, 9), F(2), F(-5, 2)]]
    got = charpoly_coeffs(np.array(a, dtype=float))
    want = charpoly_oracle(a)
    assert np.allclose(got, want, rtol=1e-12, atol=0)
    assert got[-1] == 1.0


def test_charpoly_batch_and_complex():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((50, 5, 5)) + 1j * rng.standard_normal((50, 5, 5))
    c = charpoly_coeffs(g)
    for m, row in zip(g, c):
        assert np.allclose(row[::-1], np.poly(m), atol=1e-9)
    assert np.all(c[:, -1] == 1)
    with pytest.raises(ValueError):
        charpoly_coeffs(np.full((2, 2), np.nan))


def test_moments_merge_matches_direct():
    x = np.random.default_rng(1).normal(size=(1000, 3)) * [1, 10, 1e-3] + [5, -2, 0]
    parts = [Moments.of(x[i:i + 137]) for i in range(0, 1000, 137)]
    total = parts[0]
    for p in parts[1:]:
        total = total.merge(p)
    assert total.count == 1000
    assert np.allclose(total.mean, x.mean(axis=0))
    assert np.allclose(total.m2, ((x - x.mean(axis=0)) ** 2).sum(axis=0))


def test_targets():
    assert mc_target(EnsembleSpec("real", "ginibre", 1), "charpoly-times-trace") == UniPoly({1: -2})
    assert mc_target(EnsembleSpec("quaternion", "ginibre", 1), "charpoly") == UniPoly({2: 1, 0: 2})
    with pytest.raises(ValueError):
        mc_target(EnsembleSpec("real", "ginibre", 1), "trace")


def test_real_ginibre_trace_moment():
    # <(Tr G)^2> = 2 for a 2x2 standard Gaussian, so the z coefficient is -2
    r = mc_estimate(EnsembleSpec("real", "ginibre", 1), "charpoly-times-trace", SAMPLES, 7)
    assert r.passed
    assert abs(r.estimates[1] + 2) <= 4 * r.std_errors[1]


def test_quaternion_ginibre_charpoly():
    r = mc_estimate(EnsembleSpec("quaternion", "ginibre", 1), "charpoly", SAMPLES, 7)
    assert r.passed
    assert abs(r.estimates[0] - 2) <= 4 * r.std_errors[0]
    assert r.max_imag < 1e-10
    assert r.estimates[2] == 1.0 and r.std_errors[2] == 0.0 and r.z_scores[2] == 0.0


def test_real_antispherical_trace():
    r = mc_estimate(antispherical_from_k("real", 1, 8), "charpoly-times-trace", SAMPLES, 7)
    assert r.target_exact[1] == "-1/4" and r.passed


def mc_specs():
    for n in (1, 2):
        yield EnsembleSpec("real", "ginibre", n)
        yield EnsembleSpec("quaternion", "ginibre", n)
        yield induced_from_m("real", n, 2 * n + 3)
        yield induced_from_m("quaternion", n, n + 2)
        yield spherical_from_m1("real", n, 12)
        yield spherical_from_m1("quaternion", n, 7)
        yield antispherical_from_k("real", n, 4 * n + 4)
        yield antispherical_from_k("quaternion", n, 2 * n + 2)


@pytest.mark.parametrize("spec", list(mc_specs()), ids=str)
@pytest.mark.parametrize("which", ["charpoly", "charpoly-times-trace"])
def test_every_ensemble(spec, which):
    r = mc_estimate(spec, which, 100_000, 11, allow_quaternion_spherical=True)
    assert r.passed, r.z_scores
    if which == "charpoly":
        odd = [z for k, z in enumerate(r.z_scores) if k % 2]
        assert all(abs(z) <= 4 for z in odd)
    assert r.max_imag < 1e-8


def test_spherical_guard():
    with pytest.raises(GuardError):
        mc_estimate(spherical_from_m1("real", 2, 5), "charpoly", 1000, 1)
    # a2 = 6, gap 7/2: allowed
    mc_estimate(spherical_from_m1("real", 1, 10), "charpoly", 1000, 1)


def test_quaternion_spherical_needs_opt_in():
    with pytest.raises(ValueError):
        mc_estimate(spherical_from_m1("quaternion", 1, 7), "charpoly", 1000, 1)


def test_unsampleable_parameters():
    with pytest.raises(ValueError):
        mc_estimate(EnsembleSpec("real", "induced", 1, {"alpha": F(1, 4)}), "charpoly", 1000, 1)
    with pytest.raises(ValueError):
        mc_estimate(EnsembleSpec("real", "spherical", 1, {"a1": 1, "a2": 9}), "charpoly", 1000, 1)
    with pytest.raises(ValueError):
        mc_estimate(EnsembleSpec("real", "ginibre", 1), "charpoly", 999, 1)


def test_determinism_across_workers():
    spec = EnsembleSpec("real", "induced", 1, {"alpha": 1})
    a = mc_estimate(spec, "charpoly-times-trace", 100_003, 123, workers=1).to_dict()
    b = mc_estimate(spec, "charpoly-times-trace", 100_003, 123, workers=4).to_dict()
    c = mc_estimate(spec, "charpoly-times-trace", 100_003, 124, workers=1).to_dict()
    assert a == b
    assert a != c


def test_threads_env(monkeypatch):
    from skewop import mc
    monkeypatch.setenv(mc.THREADS_ENV, "3")
    assert mc.default_workers() == 3
    monkeypatch.setenv(mc.THREADS_ENV, "lots")
    assert mc.default_workers() == 1
