"""Dimension-2 closed form from strong Harder-Narasimhan data.

For a vector bundle on the curve Proj of a two-dimensional graded ring,
with strong HN slopes a_1 > ... > a_{l+1}, ranks r_1, ..., r_{l+1}, and
d = deg O(1), the density is piecewise linear with breakpoints 1 - a_i/d:
on the region past the i-th breakpoint the value is
-sum_{k>i} (a_k + d(x-1)) r_k, and 0 past the last one.

A graded pair (R, I) with I generated in degrees d_1..d_s enters through
the syzygy sequence 0 -> V -> sum_i O(1-d_i) -> O(1) -> 0:
f_{R,I} = f_V - f_{sum O(1-d_i)}, where the line summand O(1-d_i) carries
HN data {slope (1-d_i)d, rank 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ValidationError
from .exact import PiecewisePoly, Polynomial, pw_sub, rat, rat_str


@dataclass(frozen=True)
class HNComponent:
    slope: Fraction
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError(f"component rank {self.rank} must be >= 1")


@dataclass(frozen=True)
class HNData:
    components: tuple[HNComponent, ...]
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError(f"d = {self.d} must be >= 1")
        slopes = [c.slope for c in self.components]
        if any(s <= t for s, t in zip(slopes, slopes[1:])):
            raise ValidationError(f"slopes must strictly decrease, got {slopes}")

    @staticmethod
    def build(pairs, d: int) -> "HNData":
        return HNData(
            tuple(HNComponent(Fraction(s), int(r)) for s, r in pairs), int(d)
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "components": [
                {"slope": rat_str(c.slope), "rank": c.rank}
                for c in self.components
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "HNData":
        try:
            return HNData.build(
                [(rat(c["slope"]), c["rank"]) for c in data["components"]],
                data["d"],
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed HN JSON: {exc}") from None


def hn_density(e: HNData) -> PiecewisePoly:
    """Piecewise linear density of the bundle; breakpoints 1 - a_i/d."""
    comps = e.components
    if not comps:
        return PiecewisePoly.zero()
    d = Fraction(e.d)
    thresholds = [1 - c.slope / d for c in comps]  # strictly increasing

    def region_piece(i: int) -> Polynomial:
        # -sum_{k > i} (a_k + d(x-1)) r_k, components indexed from 1
        const = sum(((d - c.slope) * c.rank for c in comps[i:]), Fraction(0))
        lin = -d * sum(c.rank for c in comps[i:])
        return Polynomial.of(const, lin)

    if thresholds[-1] <= 0:
        return PiecewisePoly.zero()
    breakpoints = [Fraction(0)]
    pieces = []
    for i, t in enumerate(thresholds):
        if t <= 0:
            continue
        pieces.append(region_piece(i))
        breakpoints.append(t)
    out = PiecewisePoly.build(breakpoints, pieces, None)
    if not out.is_continuous():
        raise ValidationError("HN density came out discontinuous")
    _check_nonnegative_linear(out, "HN density")
    return out


def _check_nonnegative_linear(f: PiecewisePoly, what: str) -> None:
    # piecewise linear: endpoint values per piece decide the sign
    bps = f.breakpoints
    for i, piece in enumerate(f.pieces):
        right = bps[i + 1]
        if piece(bps[i]) < 0 or piece(right) < 0:
            raise ValidationError(
                f"{what} is negative near [{bps[i]}, {right}): "
                "inconsistent input data"
            )


def dim2_pair_density(v: HNData, twist_degrees, d: int) -> PiecewisePoly:
    """f_V minus the density of the twisted line-bundle sum of the syzygy
    sequence; the result is the HK density of the underlying graded pair."""
    if int(d) != v.d:
        raise ValidationError(f"deg O(1) mismatch: pair d = {d}, V carries {v.d}")
    slope_ranks: dict[Fraction, int] = {}
    for deg in twist_degrees:
        slope = Fraction((1 - int(deg)) * v.d)
        slope_ranks[slope] = slope_ranks.get(slope, 0) + 1
    summand = HNData.build(
        sorted(slope_ranks.items(), key=lambda kv: kv[0], reverse=True), v.d
    )
    out = pw_sub(hn_density(v), hn_density(summand))
    if not out.has_compact_support:
        raise ValidationError("pair density failed to be compactly supported")
    if not out.is_continuous():
        raise ValidationError("pair density came out discontinuous")
    _check_nonnegative_linear(out, "pair density")
    return out
