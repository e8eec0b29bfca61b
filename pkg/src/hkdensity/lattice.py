"""Affine semigroup rings as lattice-point sets, and the empirical density path.

A ``SemigroupSpec`` is a finitely generated subsemigroup of N^rank graded by a
positive weight vector.  Monomial ideals are given by their generators as
lattice points; membership of v in the ideal is exactly "v - a_j lies in the
semigroup for some generator a_j", so once the semigroup is enumerated far
enough every colength count below the support bound is exact, not sampled.

The degree-n approximants follow the defining limit of the density function:
survivors of the q-th Frobenius power are counted degree by degree, bucketed
into windows of n0 = gcd of occupied degrees consecutive degrees, and scaled
by q^(d-1).  f_n is the resulting step function, constant on [M/q, (M+1)/q);
g_n joins the window values at the grid points x = M/q by straight lines.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CapacityError, DomainError, ValidationError
from .exact import PiecewisePoly, Polynomial, rat

Point = tuple[int, ...]

DEFAULT_MAX_POINTS = 50_000_000
_MAX_POINTS_ENV = "HKDL_MAX_POINTS"
_CONTAINMENT_DEPTH_CAP = 64


def enumeration_cap() -> int:
    raw = os.environ.get(_MAX_POINTS_ENV)
    if raw is None:
        return DEFAULT_MAX_POINTS
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"{_MAX_POINTS_ENV} must be an integer, got {raw!r}")
    if cap <= 0:
        raise ValidationError(f"{_MAX_POINTS_ENV} must be positive, got {cap}")
    return cap


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class SemigroupSpec:
    rank: int
    generators: tuple[Point, ...]
    weights: tuple[int, ...]
    p: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("rank must be >= 1")
        if len(self.weights) != self.rank or any(w < 0 for w in self.weights):
            raise ValidationError("weights must be rank-many nonnegative integers")
        if all(w == 0 for w in self.weights):
            raise ValidationError("at least one weight must be positive")
        if not self.generators:
            raise ValidationError("at least one semigroup generator required")
        for g in self.generators:
            if len(g) != self.rank or any(c < 0 for c in g):
                raise ValidationError(f"generator {g} not in N^{self.rank}")
            if all(c == 0 for c in g):
                raise ValidationError("zero vector is not a valid generator")
            # zero-degree generators would pile unboundedly many points into
            # one degree bucket; the grading must see every generator
            if sum(w * c for w, c in zip(self.weights, g)) < 1:
                raise ValidationError(
                    f"generator {g} has weighted degree 0 under {self.weights}"
                )
        if not _is_prime(self.p):
            raise ValidationError(f"characteristic p = {self.p} is not prime")

    @staticmethod
    def build(rank, generators, weights, p) -> "SemigroupSpec":
        return SemigroupSpec(
            rank, tuple(tuple(g) for g in generators), tuple(weights), p
        )

    def degree(self, v: Point) -> int:
        return sum(w * c for w, c in zip(self.weights, v))

    @property
    def n0(self) -> int:
        """gcd of occupied degrees; degrees of semigroup elements are additive,
        so this is just the gcd of the generator degrees."""
        out = 0
        for g in self.generators:
            out = gcd(out, self.degree(g))
        return out

    @property
    def dim(self) -> int:
        """Rank of the lattice spanned by the generators (Krull dimension)."""
        rows = [[Fraction(c) for c in g] for g in self.generators]
        rank = 0
        for col in range(self.rank):
            pivot = next(
                (r for r in range(rank, len(rows)) if rows[r][col] != 0), None
            )
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = 1 / rows[rank][col]
            rows[rank] = [c * inv for c in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [c - f * d for c, d in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "gens": [list(g) for g in self.generators],
            "weights": list(self.weights),
            "p": self.p,
        }

    @staticmethod
    def from_json(data: dict) -> "SemigroupSpec":
        try:
            return SemigroupSpec.build(
                data["rank"], data["gens"], data["weights"], data["p"]
            )
        except KeyError as exc:
            from .errors import InputError

            raise InputError(f"semigroup JSON missing key {exc}") from None


@dataclass(frozen=True)
class MonomialIdealSpec:
    generators: tuple[Point, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValidationError("ideal needs at least one generator")

    @staticmethod
    def build(generators) -> "MonomialIdealSpec":
        return MonomialIdealSpec(tuple(tuple(g) for g in generators))

    def to_json(self) -> dict:
        return {"gens": [list(g) for g in self.generators]}

    @staticmethod
    def from_json(data: dict) -> "MonomialIdealSpec":
        try:
            return MonomialIdealSpec.build(data["gens"])
        except KeyError as exc:
            from .errors import InputError

            raise InputError(f"ideal JSON missing key {exc}") from None


class SemigroupEnumeration:
    """All semigroup points of degree <= max_degree, in deterministic order."""

    def __init__(self, spec: SemigroupSpec, max_degree: int, cap: int):
        self.spec = spec
        self.max_degree = max_degree
        by_degree: list[list[Point]] = [[] for _ in range(max_degree + 1)]
        seen: set[Point] = set()
        import heapq

        origin = (0,) * spec.rank
        heap: list[tuple[int, Point]] = [(0, origin)]
        seen.add(origin)
        gens = [(spec.degree(g), g) for g in spec.generators]
        while heap:
            deg, v = heapq.heappop(heap)
            by_degree[deg].append(v)
            for gdeg, g in gens:
                ndeg = deg + gdeg
                if ndeg > max_degree:
                    continue
                w = tuple(a + b for a, b in zip(v, g))
                if w not in seen:
                    if len(seen) >= cap:
                        raise CapacityError(
                            f"semigroup enumeration exceeded cap of {cap} points "
                            f"(degree bound {max_degree}); raise {_MAX_POINTS_ENV} "
                            "or lower the level"
                        )
                    seen.add(w)
                    heapq.heappush(heap, (ndeg, w))
        self.by_degree = by_degree
        self._members = seen

    @property
    def count(self) -> int:
        return len(self._members)

    def points(self) -> list[Point]:
        return [v for bucket in self.by_degree for v in bucket]

    def contains(self, v: Point) -> bool:
        """Exact membership for points of degree <= max_degree."""
        if any(c < 0 for c in v):
            return False
        if self.spec.degree(v) > self.max_degree:
            raise DomainError(
                f"membership query at degree {self.spec.degree(v)} beyond "
                f"enumerated bound {self.max_degree}"
            )
        return v in self._members


def enumerate_semigroup(
    spec: SemigroupSpec, max_degree: int, cap: int | None = None
) -> SemigroupEnumeration:
    if max_degree < 0:
        raise DomainError("max_degree must be >= 0")
    return SemigroupEnumeration(spec, max_degree, cap or enumeration_cap())


@dataclass(frozen=True)
class DensityApproximant:
    level: int
    q: int
    f_step: PiecewisePoly
    g_interp: PiecewisePoly

    @property
    def integral(self) -> Fraction:
        from .exact import pw_integrate

        return pw_integrate(self.f_step)


@dataclass(frozen=True)
class ConvergenceRow:
    level: int
    q: int
    sup_distance: Fraction
    integral: Fraction


class LatticePair:
    """A semigroup ring together with a finite-colength monomial ideal.

    Caches the support-bound computation and the largest enumeration done so
    far; every public count is exact.
    """

    def __init__(
        self,
        spec: SemigroupSpec,
        ideal: MonomialIdealSpec,
        cap: int | None = None,
    ):
        self.spec = spec
        self.ideal = ideal
        self.cap = cap if cap is not None else enumeration_cap()
        self._enum: SemigroupEnumeration | None = None
        self._ell: int | None = None
        # every ideal generator must be a semigroup element
        probe = max(spec.degree(a) for a in ideal.generators)
        enum = self._enumerated(probe)
        for a in ideal.generators:
            if not enum.contains(a):
                raise ValidationError(
                    f"ideal generator {a} is not a semigroup element"
                )

    def _enumerated(self, max_degree: int) -> SemigroupEnumeration:
        if self._enum is None or self._enum.max_degree < max_degree:
            self._enum = SemigroupEnumeration(self.spec, max_degree, self.cap)
        return self._enum

    # -- support bound ----------------------------------------------------

    def _in_ideal(self, v: Point, enum: SemigroupEnumeration) -> bool:
        for a in self.ideal.generators:
            w = tuple(c - d for c, d in zip(v, a))
            if all(c >= 0 for c in w) and enum.contains(w):
                return True
        return False

    def containment_exponent(self) -> int:
        """Least l with J^l contained in I, where J is the irrelevant ideal
        generated by the semigroup generators.  Existence of such an l is
        exactly the finite-colength condition; the search is capped."""
        if self._ell is not None:
            return self._ell
        m_mu = max(self.spec.degree(g) for g in self.spec.generators)
        for ell in range(1, _CONTAINMENT_DEPTH_CAP + 1):
            enum = self._enumerated(ell * m_mu)
            ok = True
            for combo in itertools.combinations_with_replacement(
                self.spec.generators, ell
            ):
                v = tuple(map(sum, zip(*combo)))
                if not self._in_ideal(v, enum):
                    ok = False
                    break
            if ok:
                self._ell = ell
                return ell
        raise ValidationError(
            "no power of the irrelevant ideal lies inside the ideal up to depth "
            f"{_CONTAINMENT_DEPTH_CAP}; colength is likely infinite"
        )

    def support_bound(self) -> Fraction:
        """An x-axis bound valid for every level: all approximants vanish at
        and beyond it.  With m_mu the largest generator degree, s the number
        of ideal generators and l the containment exponent, colengths vanish
        in all ambient degrees >= m_mu*l*s*q, hence the window index bound
        ceil(m_mu*l*s / n0) works for every q simultaneously."""
        m_mu = max(self.spec.degree(g) for g in self.spec.generators)
        s = len(self.ideal.generators)
        ell = self.containment_exponent()
        n0 = self.spec.n0
        return Fraction(-(-m_mu * ell * s // n0))

    # -- colengths ---------------------------------------------------------

    def _check_q(self, q: int) -> None:
        if q < 1:
            raise ValidationError(f"q must be a positive power of p, got {q}")
        t = q
        while t % self.spec.p == 0:
            t //= self.spec.p
        if t != 1:
            raise ValidationError(
                f"q = {q} is not a power of the configured characteristic "
                f"p = {self.spec.p}"
            )

    def _survives(self, v: Point, q: int, enum: SemigroupEnumeration) -> bool:
        for a in self.ideal.generators:
            w = tuple(c - q * d for c, d in zip(v, a))
            if all(c >= 0 for c in w) and enum.contains(w):
                return False
        return True

    def colength_by_degree(self, q: int, m: int) -> int:
        self._check_q(q)
        if m < 0:
            return 0
        enum = self._enumerated(m)
        return sum(1 for v in enum.by_degree[m] if self._survives(v, q, enum))

    def colengths_up_to(self, q: int, max_m: int, threads: int = 1) -> list[int]:
        """Colength of the q-th Frobenius power in each degree 0..max_m.

        Counting parallelizes over degrees after the (serial) enumeration;
        the result is independent of the thread count.
        """
        self._check_q(q)
        enum = self._enumerated(max_m)

        def count(m: int) -> int:
            return sum(
                1 for v in enum.by_degree[m] if self._survives(v, q, enum)
            )

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                return list(pool.map(count, range(max_m + 1)))
        return [count(m) for m in range(max_m + 1)]

    # -- approximants ------------------------------------------------------

    def build_approximant(self, level: int, threads: int = 1) -> DensityApproximant:
        if level < 1:
            raise DomainError("level must be >= 1")
        q = self.spec.p ** level
        n0 = self.spec.n0
        d = self.spec.dim
        bound = self.support_bound()
        max_window = int(bound * q)  # windows max_window.. are all zero
        max_degree = (max_window + 1) * n0 - 1
        counts = self.colengths_up_to(q, max_degree, threads=threads)
        scale = Fraction(1, q ** (d - 1)) if d > 1 else Fraction(1)
        values = [
            sum(counts[window * n0 + j] for j in range(n0)) * scale
            for window in range(max_window + 1)
        ]
        if values[-1] != 0:
            from .errors import InternalError

            raise InternalError(
                f"window {max_window} at q={q} should vanish by the support "
                f"bound {bound} but counted {values[-1]}"
            )
        step = Fraction(1, q)
        f_step = PiecewisePoly.build(
            [step * i for i in range(len(values) + 1)],
            [Polynomial.of(v) for v in values],
        )
        # piecewise-linear interpolant through (M/q, f_n(M/q)), ending at 0
        values_ext = values + [Fraction(0)]
        g_pieces = []
        for i in range(len(values_ext) - 1):
            x0 = step * i
            y0, y1 = values_ext[i], values_ext[i + 1]
            slope = (y1 - y0) * q
            g_pieces.append(Polynomial.of(y0 - slope * x0, slope))
        g_interp = PiecewisePoly.build(
            [step * i for i in range(len(values_ext))], g_pieces
        )
        return DensityApproximant(level, q, f_step, g_interp)

    def convergence_report(
        self,
        levels: list[int],
        reference: PiecewisePoly | None = None,
        threads: int = 1,
    ) -> list[ConvergenceRow]:
        """Sup distances of g_n to the reference, or to g_{n+1} when absent."""
        from .exact import pw_sup_distance

        levels = sorted(set(levels))
        if not levels:
            raise DomainError("need at least one level")
        needed = set(levels)
        if reference is None:
            needed.update(n + 1 for n in levels)
        approx = {n: self.build_approximant(n, threads=threads) for n in sorted(needed)}
        rows = []
        for n in levels:
            target = reference if reference is not None else approx[n + 1].g_interp
            rows.append(
                ConvergenceRow(
                    level=n,
                    q=self.spec.p ** n,
                    sup_distance=pw_sup_distance(approx[n].g_interp, target),
                    integral=approx[n].integral,
                )
            )
        return rows

    def estimate_points(self, max_degree: int) -> int:
        """Cheap extrapolated point-count estimate used for early cap checks."""
        d = self.spec.dim
        probe = min(max_degree, max(16, 64 // max(1, d - 1)) * self.spec.n0)
        enum = self._enumerated(probe)
        if probe >= max_degree:
            return enum.count
        ratio = Fraction(max_degree + 1, probe + 1)
        return int(enum.count * ratio ** d) + 1

    def max_feasible_level(self, max_level: int = 30) -> int:
        """Largest level whose enumeration stays under the configured cap."""
        bound = self.support_bound()
        n0 = self.spec.n0
        best = 0
        for level in range(1, max_level + 1):
            q = self.spec.p ** level
            max_degree = (int(bound * q) + 1) * n0 - 1
            if self.estimate_points(max_degree) > self.cap:
                break
            best = level
        return best


def monomial_colength_by_degree(
    spec: SemigroupSpec, ideal: MonomialIdealSpec, q: int, m: int
) -> int:
    return LatticePair(spec, ideal).colength_by_degree(q, m)


def build_approximant(
    spec: SemigroupSpec, ideal: MonomialIdealSpec, level: int
) -> DensityApproximant:
    return LatticePair(spec, ideal).build_approximant(level)


def support_bound(spec: SemigroupSpec, ideal: MonomialIdealSpec) -> Fraction:
    return LatticePair(spec, ideal).support_bound()


def convergence_report(
    spec: SemigroupSpec,
    ideal: MonomialIdealSpec,
    levels: list[int],
    reference: PiecewisePoly | None = None,
) -> list[ConvergenceRow]:
    return LatticePair(spec, ideal).convergence_report(levels, reference)
