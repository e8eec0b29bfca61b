"""Combinators on density pairs: Segre products, Veronese rescaling.

A DensityPair holds the Hilbert-Samuel envelope F(x) = ehat * x^(d-1)
together with the Hilbert-Kunz density f of a fixed pair (R, I).  The Segre
product formula reads F - f = (F_A - f_A)(F_B - f_B): the defect from the
ambient envelope multiplies.  Veronese-type regrading by a factor c with a
module rank r sends f to x |-> (c/r) f(c x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import DomainError, ValidationError
from .exact import (
    PiecewisePoly,
    pw_integrate,
    pw_mul,
    pw_rescale_arg,
    pw_scale,
    pw_sub,
)

_GRID = 64


@dataclass(frozen=True)
class DensityPair:
    """Envelope F, density f, dimension d, for one graded pair (R, I)."""

    F: PiecewisePoly
    f: PiecewisePoly
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValidationError("density pairs need dimension >= 2")
        tail = self.F.tail
        if (
            self.F.pieces
            or tail is None
            or sum(1 for c in tail.coeffs if c != 0) != 1
            or tail.coeffs[-1] <= 0
        ):
            raise ValidationError(
                "envelope must be a single positive monomial ehat * x^k"
            )
        if tail.degree != self.d - 1:
            raise ValidationError(
                f"envelope degree {tail.degree} != d - 1 = {self.d - 1}"
            )
        if not self.f.has_compact_support:
            raise ValidationError("density must be compactly supported")
        if not self.f.is_continuous():
            raise ValidationError("density must be continuous")
        end = self.f.support_end
        for k in range(_GRID + 1):
            x = end * k / _GRID
            if self.f(x) > self.F(x) or self.f(x) < 0:
                raise ValidationError(
                    f"density escapes [0, envelope] at x = {x}"
                )

    @property
    def ehat(self) -> Fraction:
        return self.F.tail.coeffs[-1]

    @property
    def ehk(self) -> Fraction:
        return pw_integrate(self.f)

    def defect(self) -> PiecewisePoly:
        """F - f: the envelope defect entering the Segre formula."""
        return pw_sub(self.F, self.f)


def segre(a: DensityPair, b: DensityPair) -> DensityPair:
    """Density pair of the Segre product; dimension d_A + d_B - 1."""
    F = pw_mul(a.F, b.F)
    f = pw_sub(F, pw_mul(a.defect(), b.defect()))
    out = DensityPair(F, f, a.d + b.d - 1)
    # product formula expanded: integral of f equals the three-term sum
    three = (
        pw_integrate(pw_mul(a.F, b.f))
        + pw_integrate(pw_mul(b.F, a.f))
        - pw_integrate(pw_mul(a.f, b.f))
    )
    if out.ehk != three:
        raise ValidationError(
            f"Segre integral {out.ehk} != three-term expansion {three}"
        )
    return out


def rescale_density(f: PiecewisePoly, l0: int, rank: int) -> PiecewisePoly:
    """Regrade by factor l0 against a rank-`rank` module: (l0/rank) f(l0 x)."""
    if l0 < 1:
        raise DomainError(f"rescale factor l0 = {l0} must be >= 1")
    if rank < 1:
        raise DomainError(f"rank = {rank} must be >= 1")
    return pw_rescale_arg(f, Fraction(l0), Fraction(l0, rank))


def module_density(f: PiecewisePoly, rank: int) -> PiecewisePoly:
    """Density of a free module of the given rank over the same pair."""
    if rank < 0:
        raise DomainError(f"rank = {rank} must be >= 0")
    return pw_scale(f, rank)


def rank_from_degrees(gen_degrees, rel_degrees) -> Fraction:
    """prod(gen degrees) / prod(relation degrees); the module rank implied
    by the degree data of an invariant presentation."""
    num = prod(int(e) for e in gen_degrees)
    den = prod(int(c) for c in rel_degrees) if rel_degrees else 1
    if num <= 0 or den <= 0:
        raise ValidationError("degrees must be positive")
    return Fraction(num, den)
