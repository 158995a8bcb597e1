import math
from fractions import Fraction as F

import pytest

from skewop.algebra import UniPoly, poly_shift_mul
from skewop.derive import (
    SkewPolyPair,
    check_equal,
    check_grid,
    closed_form,
    derive,
    derive_even,
    derive_odd,
    grid_specs,
    literature_reduction,
    schur_average,
    trace_average,
)
from skewop.ensemble import EnsembleSpec
from skewop.errors import ConsistencyError, PoleError
from skewop.symfunc import Partition

Z = UniPoly.monomial


def spec(tag, n, **params):
    return EnsembleSpec.from_tag(tag, n, params)


@pytest.mark.parametrize("n", range(1, 7))
def test_real_ginibre(n):
    s = spec("ginibre-r", n)
    assert derive_even(s) == Z(2 * n)
    assert derive_odd(s) == UniPoly({2 * n + 1: 1, 2 * n - 1: -2 * n})


def test_quaternion_ginibre_small():
    assert derive_even(spec("ginibre-q", 1)) == UniPoly({2: 1, 0: 2})
    # 2^2 2! (1 + z^2/2 + z^4/8)
    assert closed_form(spec("ginibre-q", 2)).q_even == UniPoly({4: 1, 2: 4, 0: 8})


def test_quaternion_induced_small():
    alpha = F(2)
    # constant term 2^1 Gamma(2 + alpha)/Gamma(1 + alpha) = 2 (1 + alpha)
    assert derive_even(spec("induced-q", 1, alpha=alpha)) == UniPoly({2: 1, 0: 2 * (1 + alpha)})
    assert derive_even(spec("induced-q", 1, alpha=alpha)) == UniPoly({2: 1, 0: 6})


def test_real_induced_closed_form():
    assert closed_form(spec("induced-r", 2, alpha=1)).q_odd == UniPoly({5: 1, 3: -6})


def test_real_spherical_small():
    s = spec("spherical-r", 1, a1=0, a2=4)
    want = UniPoly({3: 1, 1: F(-2, 3)})
    assert derive_odd(s) == want
    assert closed_form(s).q_odd == want


def test_quaternion_antispherical_small():
    s = spec("antispherical-q", 1, b1=0, b2=F(1, 2))
    c = math.gamma(2) * math.gamma(2) / (math.gamma(3) * math.gamma(1))
    assert closed_form(s).q_even == UniPoly({2: 1, 0: F(1, 2)})
    assert math.isclose(c, 0.5)
    assert derive_even(s) == closed_form(s).q_even


@pytest.mark.parametrize("tag, params", [
    ("ginibre-q", {}), ("induced-q", {"alpha": F(3, 2)}),
    ("spherical-q", {"a1": 1, "a2": 12}), ("antispherical-q", {"b1": F(1, 2), "b2": 3}),
])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_quaternion_odd_is_monomial(tag, params, n):
    s = EnsembleSpec.from_tag(tag, n, params)
    assert derive_odd(s) == Z(2 * n + 1)
    # term-by-term: <det Tr> = -(z Q_2n - z^(2n+1))
    assert trace_average(s) == Z(2 * n + 1) - poly_shift_mul(derive_even(s), 1)


def test_selection_rules_through_averages():
    s = spec("ginibre-r", 2)
    assert schur_average(s, Partition()) == 1
    assert schur_average(s, Partition((1, 1))) == 0
    assert schur_average(s, Partition((2,))) == 4
    q = spec("ginibre-q", 2)
    assert schur_average(q, Partition((1, 1))) == 4
    assert schur_average(q, Partition((2, 1))) == 0


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("kind", ["r", "q"])
def test_induced_alpha_zero_is_ginibre(n, kind):
    assert derive(spec(f"induced-{kind}", n, alpha=0)) == derive(spec(f"ginibre-{kind}", n))
    assert closed_form(spec(f"induced-{kind}", n, alpha=0)) == closed_form(spec(f"ginibre-{kind}", n))


def test_small_grid_equal_and_well_formed():
    report = check_grid(grid_specs(3))
    assert report.passed and not report.excluded
    for c in report.checked:
        pair = derive(c.spec)
        assert pair.q_even.is_even() and pair.q_odd.is_odd()
        assert pair.q_even.is_monic() and pair.q_odd.is_monic()
        assert pair.q_even.degree == 2 * c.spec.n and pair.q_odd.degree == 2 * c.spec.n + 1


def test_corrupted_closed_form_is_caught():
    def corrupted(s):
        good = closed_form(s)
        return SkewPolyPair(good.q_even + Z(0, 1), good.q_odd)

    res = check_equal(spec("ginibre-q", 2), closed=corrupted)
    assert not res
    assert (res.which, res.degree, res.derived, res.closed) == ("even", 0, 8, 9)
    assert "z^0" in res.describe()


def test_pole_points_are_excluded_not_skipped():
    specs = grid_specs(2, {"a2": [F(9, 2), F(7)]}, tags=["spherical-r"])
    report = check_grid(specs)
    assert report.passed
    bad = [(s.n, s["a1"], s["a2"]) for s, _ in report.excluded]
    assert (2, 0, F(9, 2)) in bad
    assert len(report.checked) + len(report.excluded) == len(specs)


def test_pole_raises():
    with pytest.raises(PoleError):
        closed_form(spec("spherical-r", 1, a2=F(5, 2)))
    with pytest.raises(PoleError):
        derive(spec("spherical-r", 1, a2=F(5, 2)))


def test_skew_pair_validation():
    with pytest.raises(ConsistencyError):
        SkewPolyPair(UniPoly({2: 2}), Z(3))
    with pytest.raises(ConsistencyError):
        SkewPolyPair(Z(2), UniPoly({3: 1, 2: 1}))


@pytest.mark.parametrize("kind, params, n, want", [
    ("antispherical", {"L": 6}, 1, F(1, 4)),
    ("antispherical", {"L": 2}, 1, F(1, 2)),
    ("spherical-induced", {"L": 2, "m": 7}, 1, F(1)),
    ("antispherical-induced", {"L1": 0, "L2": 6}, 1, F(1, 4)),
])
def test_literature_examples(kind, params, n, want):
    res = literature_reduction(kind, params, n)
    assert res
    assert res.closed.q_odd == UniPoly({2 * n + 1: 1, 2 * n - 1: -want})


def test_literature_substitution():
    # alpha1 = L/2, alpha2 = (m + L + 2n)/2 at L=2, m=7, n=1
    res = literature_reduction("spherical-induced", {"L": 2, "m": 7}, 1)
    assert res.spec.params == {"a1": 1, "a2": F(11, 2)}
    with pytest.raises(PoleError):
        literature_reduction("spherical-induced", {"L": 2, "m": 3}, 1)


def test_ensemble_validation():
    with pytest.raises(ValueError):
        EnsembleSpec("real", "ginibre", 0)
    with pytest.raises(ValueError):
        EnsembleSpec.from_tag("ginibre-x", 1)
    with pytest.raises(ValueError):
        spec("spherical-r", 1, a1=0)  # a2 required
    with pytest.raises(ValueError):
        spec("induced-r", 1, alpha=-1)
    with pytest.raises(ValueError):
        spec("ginibre-r", 1, alpha=1)
    s = spec("antispherical-q", 3, b2=2)
    assert s.params == {"b1": 0, "b2": 2} and s.tag == "antispherical-q" and s.matrix_dim == 6
