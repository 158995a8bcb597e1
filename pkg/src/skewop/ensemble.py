"""Tagged description of the eight supported ensemble families."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import as_rational

FIELD_KINDS = ("real", "quaternion")
FAMILIES = ("ginibre", "induced", "spherical", "antispherical")

PARAM_NAMES = {
    "ginibre": (),
    "induced": ("alpha",),
    "spherical": ("a1", "a2"),
    "antispherical": ("b1", "b2"),
}
_DEFAULTS = {"alpha": Fraction(0), "a1": Fraction(0), "b1": Fraction(0)}
_SUFFIX = {"real": "r", "quaternion": "q"}

TAGS = tuple(f"{fam}-{_SUFFIX[fk]}" for fam in FAMILIES for fk in FIELD_KINDS)


@dataclass(frozen=True)
class EnsembleSpec:
    """One ensemble: field kind, family, half-degree ``n`` and exact parameters.

    ``n`` indexes the pair ``Q_{2n}, Q_{2n+1}``. For real ensembles the matrix
    is ``2n x 2n``; for quaternion ensembles it is ``n x n`` over the
    quaternions, i.e. ``2n x 2n`` in its complex representation.

    Parameters: ``alpha`` (induced), ``a1, a2`` (spherical, weight
    ``det(G'G)^a1 / det(1 + G'G)^a2``), ``b1, b2`` (anti-spherical, weight
    ``det(G'G)^b1 det(1 - G'G)^b2``). Determinants are over the complex
    representation for quaternion matrices.
    """

    field_kind: str
    family: str
    n: int
    params: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.field_kind not in FIELD_KINDS:
            raise ValueError(f"unknown field kind {self.field_kind!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown ensemble family {self.family!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        allowed = PARAM_NAMES[self.family]
        unknown = set(self.params) - set(allowed)
        if unknown:
            raise ValueError(
                f"unknown parameter(s) {sorted(unknown)} for {self.family}; expected {list(allowed)}"
            )
        clean = {}
        for name in allowed:
            if name in self.params:
                clean[name] = as_rational(self.params[name])
            elif name in _DEFAULTS:
                clean[name] = _DEFAULTS[name]
            else:
                raise ValueError(f"missing required parameter {name!r} for {self.family}")
        if self.family == "induced" and clean["alpha"] < 0:
            raise ValueError("induced ensembles need alpha >= 0")
        object.__setattr__(self, "params", clean)

    @classmethod
    def from_tag(cls, tag: str, n: int, params: Mapping | None = None) -> "EnsembleSpec":
        family, _, suffix = tag.rpartition("-")
        kinds = {v: k for k, v in _SUFFIX.items()}
        if tag not in TAGS:
            raise ValueError(f"unknown ensemble tag {tag!r}; choose from {', '.join(TAGS)}")
        return cls(kinds[suffix], family, n, dict(params or {}))

    @property
    def tag(self) -> str:
        return f"{self.family}-{_SUFFIX[self.field_kind]}"

    @property
    def is_real(self) -> bool:
        return self.field_kind == "real"

    @property
    def matrix_dim(self) -> int:
        """Size of the (complex representation of the) matrix, always ``2n``."""
        return 2 * self.n

    def __getitem__(self, name: str) -> Fraction:
        return self.params[name]

    def __str__(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.tag}(n={self.n}{', ' + ps if ps else ''})"
