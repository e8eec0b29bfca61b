"""Closed-form Hilbert-Kunz density from a graded free resolution.

Input is the graded Betti table of R/I for an ideal I of finite colength
support: a list of (homological index i, twist degree j, multiplicity).
Only the alternating column sums B(j) = sum_i (-1)^i beta_{i,j} enter the
density.  Bricking the twists by the Frobenius power q, the colength in
degree m is sum_j B(j) * dim_k R_{m - j q}; normalizing windows by q^(d-1)
and letting q grow gives a piecewise polynomial with breakpoints at the
twist degrees (in window units, j / n0).

The alternating sums must satisfy sum_j B(j) (x - j)^(d-1) == 0 identically;
this is exactly what makes the density compactly supported, and it fails
for tables that do not resolve a finite-colength quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BettiIdentityError, InputError, InternalError, ValidationError
from .exact import P_ZERO, PiecewisePoly, Polynomial, pw_integrate


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of R/I, homological indices i >= 1.

    The i = 0 column is implicit: a single free summand in degree 0."""

    d: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError("dimension must be >= 1")
        for i, j, b in self.entries:
            if i < 1:
                raise ValidationError(f"homological index {i} < 1")
            if j < 1:
                raise ValidationError(f"twist degree {j} < 1 at index {i}")
            if b < 1:
                raise ValidationError(f"multiplicity {b} < 1 at ({i}, {j})")

    @staticmethod
    def build(d: int, entries) -> "BettiTable":
        merged: dict[tuple[int, int], int] = {}
        for i, j, b in entries:
            merged[(int(i), int(j))] = merged.get((int(i), int(j)), 0) + int(b)
        canon = tuple(
            (i, j, b) for (i, j), b in sorted(merged.items()) if b != 0
        )
        return BettiTable(d, canon)

    def b_numbers(self) -> dict[int, int]:
        """Alternating column sums B(j); B(0) starts from the implicit 1."""
        out = {0: 1}
        for i, j, b in self.entries:
            out[j] = out.get(j, 0) + (-1) ** i * b
        return {j: v for j, v in sorted(out.items()) if v != 0 or j == 0}

    def max_twist(self) -> int:
        return max((j for _, j, _ in self.entries), default=0)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "betti": [{"i": i, "j": j, "b": b} for i, j, b in self.entries],
        }

    @staticmethod
    def from_json(data: dict) -> "BettiTable":
        try:
            entries = [(row["i"], row["j"], row["b"]) for row in data["betti"]]
            return BettiTable.build(data["d"], entries)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed Betti table JSON: {exc}") from None


def betti_residual(betti: BettiTable) -> Polynomial:
    """sum_j B(j) (x - j)^(d-1); identically zero for valid tables."""
    acc = P_ZERO
    for j, bj in betti.b_numbers().items():
        acc = acc + (Polynomial.of(-j, 1) ** (betti.d - 1)).scale(Fraction(bj))
    return acc


def validate_betti(betti: BettiTable) -> None:
    res = betti_residual(betti)
    if not res.is_zero():
        raise BettiIdentityError(
            "alternating Betti sums fail the degree-(d-1) vanishing identity",
            residual=res,
        )


def colength_by_degree(betti: BettiTable, hilbert, q: int, m: int) -> int:
    """dim_k (R / I^[q])_m from the resolution: sum_j B(j) ell(R_{m - jq})."""
    if q < 1:
        raise ValidationError(f"Frobenius power q = {q} must be >= 1")
    total = 0
    for j, bj in betti.b_numbers().items():
        total += bj * hilbert(m - j * q)
    if total < 0:
        raise ValidationError(
            f"negative colength {total} in degree {m} at q = {q}: "
            "the Betti table does not resolve a quotient of this ring"
        )
    return total


def closed_form_density(
    betti: BettiTable, ehat: Fraction, n0: int = 1
) -> PiecewisePoly:
    """Limit density: on [j_t/n0, j_{t+1}/n0), ehat * sum over activated
    twists of B(j) (x - j/n0)^(d-1)."""
    validate_betti(betti)
    if betti.d < 2:
        raise ValidationError("closed-form density needs dimension >= 2")
    if n0 < 1:
        raise ValidationError(f"n0 = {n0} must be >= 1")
    if ehat <= 0:
        raise ValidationError(f"ehat = {ehat} must be positive")
    bn = betti.b_numbers()
    twists = sorted(bn)
    breakpoints = [Fraction(j, n0) for j in twists]
    pieces = []
    acc = P_ZERO
    for j in twists:
        shift = Polynomial.of(Fraction(-j, n0), 1) ** (betti.d - 1)
        acc = acc + shift.scale(Fraction(bn[j]) * ehat)
        pieces.append(acc)
    # the final cumulative piece is the full vanishing sum, drop it
    out = PiecewisePoly.build(breakpoints, pieces[:-1], None)
    if not pieces[-1].is_zero() or out.tail is not None:
        raise InternalError("density did not close up to compact support")
    if not out.is_continuous():
        raise InternalError("closed-form density is discontinuous")
    return out


def ehk_closed_form(betti: BettiTable, ehat: Fraction, n0: int = 1) -> Fraction:
    """(ehat / d) * sum_j B(j) ((l - j)/n0)^d with l the last twist; checked
    against direct integration of the density."""
    density = closed_form_density(betti, ehat, n0)
    bn = betti.b_numbers()
    l = max(bn)
    total = sum(
        (Fraction(bj) * Fraction(l - j, n0) ** betti.d for j, bj in bn.items()),
        Fraction(0),
    )
    value = ehat * total / betti.d
    if value != pw_integrate(density):
        raise InternalError(
            f"multiplicity formula {value} != integral {pw_integrate(density)}"
        )
    return value


def koszul_betti(d: int, degrees) -> BettiTable:
    """Betti table of the Koszul complex on forms of the given degrees."""
    degrees = tuple(int(a) for a in degrees)
    if any(a < 1 for a in degrees):
        raise ValidationError("Koszul input degrees must be positive")
    entries = []
    for i in range(1, len(degrees) + 1):
        for subset in combinations(degrees, i):
            entries.append((i, sum(subset), 1))
    return BettiTable.build(d, entries)
