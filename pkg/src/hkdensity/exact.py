"""Exact kernel: rationals, dense univariate polynomials, piecewise polynomials.

Everything here is immutable and exact over Q.  A ``PiecewisePoly`` models a
function on [0, oo): finitely many half-open pieces [b_{i-1}, b_i) between
strictly increasing rational breakpoints (b_0 = 0), then an optional
polynomial tail on [b_k, oo); a missing tail means the function is 0 beyond
the last breakpoint.  Compactly supported densities have no tail, while
envelope functions like ehat*x^(d-1) are a tail with no finite pieces.

Construction always canonicalizes: adjacent equal pieces are merged, trailing
pieces equal to the tail (or to zero when there is none) are absorbed, and a
zero tail is dropped.  Structural equality of canonical forms is therefore
function equality, which the JSON round-trip preserves byte-for-byte.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DomainError, InputError, ValidationError

Rat = Fraction

# Sample count for the certified sup-distance fallback on pieces whose
# derivative has irrational critical points.
_SUP_SAMPLES = 1024


def rat(value: int | str | Fraction) -> Fraction:
    """Parse an exact rational from an int, Fraction, or 'num/den' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {value!r}: {exc}") from None
    raise InputError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(x: Fraction) -> str:
    """Canonical 'num/den' form; integers print without a denominator."""
    return str(x)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial over Q, coefficients constant-first.

    The zero polynomial is the empty tuple; otherwise the leading coefficient
    is nonzero, so degree == len(coeffs) - 1.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(*coeffs: int | str | Fraction) -> "Polynomial":
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.of(
            *(self._coef(i) + other._coef(i) for i in range(n))
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial.of(*out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Polynomial.of(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, k: int | str | Fraction) -> "Polynomial":
        k = rat(k)
        return Polynomial.of(*(c * k for c in self.coeffs))

    def compose_linear(self, a: Fraction, b: Fraction) -> "Polynomial":
        """p(a*x + b), exactly."""
        lin = Polynomial.of(b, a)
        acc = Polynomial(())
        for c in reversed(self.coeffs):
            acc = acc * lin + Polynomial.of(c)
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial.of(*(i * c for i, c in enumerate(self.coeffs) if i))

    def antiderivative(self) -> "Polynomial":
        return Polynomial.of(
            0, *(c / (i + 1) for i, c in enumerate(self.coeffs))
        )

    def _coef(self, i: int) -> Fraction:
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[int | str]) -> "Polynomial":
        if not isinstance(data, (list, tuple)):
            raise InputError("polynomial JSON must be a list of rationals")
        return Polynomial.of(*data)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rat_str(c))
            elif i == 1:
                parts.append(f"{rat_str(c)}*x" if c != 1 else "x")
            else:
                parts.append(f"{rat_str(c)}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts).replace("+ -", "- ")


P_ZERO = Polynomial(())
P_ONE = Polynomial.of(1)
P_X = Polynomial.of(0, 1)


# ---------------------------------------------------------------------------
# piecewise polynomials


@dataclass(frozen=True)
class PiecewisePoly:
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Polynomial, ...]
    tail: Polynomial | None = None

    @staticmethod
    def build(
        breakpoints: Iterable[int | str | Fraction],
        pieces: Iterable[Polynomial],
        tail: Polynomial | None = None,
    ) -> "PiecewisePoly":
        bps = [rat(b) for b in breakpoints]
        pcs = list(pieces)
        if len(bps) != len(pcs) + 1:
            raise ValidationError(
                f"{len(bps)} breakpoints require {len(bps) - 1} pieces, got {len(pcs)}"
            )
        if not bps or bps[0] != 0:
            raise ValidationError("first breakpoint must be 0")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise ValidationError("breakpoints must be strictly increasing")
        if tail is not None and tail.is_zero():
            tail = None
        # merge adjacent equal pieces
        merged_b = [bps[0]]
        merged_p: list[Polynomial] = []
        for b, p in zip(bps[1:], pcs):
            if merged_p and merged_p[-1] == p:
                merged_b[-1] = b
            else:
                merged_b.append(b)
                merged_p.append(p)
        # absorb trailing pieces equal to the implicit continuation
        cont = tail if tail is not None else P_ZERO
        while merged_p and merged_p[-1] == cont:
            merged_p.pop()
            merged_b.pop()
        return PiecewisePoly(tuple(merged_b), tuple(merged_p), tail)

    @staticmethod
    def zero() -> "PiecewisePoly":
        return PiecewisePoly((Fraction(0),), ())

    @staticmethod
    def monomial_tail(coeff: Fraction, power: int) -> "PiecewisePoly":
        """The function coeff * x^power on all of [0, oo)."""
        return PiecewisePoly.build([0], [], Polynomial.of(*([0] * power), coeff))

    def is_zero(self) -> bool:
        return not self.pieces and self.tail is None

    @property
    def support_end(self) -> Fraction:
        """Last breakpoint; the function is given by the tail (or 0) beyond."""
        return self.breakpoints[-1]

    @property
    def has_compact_support(self) -> bool:
        return self.tail is None

    def piece_at(self, x: Fraction) -> Polynomial:
        if x < 0:
            raise DomainError(f"piecewise functions live on [0, oo); got {x}")
        idx = bisect_right(self.breakpoints, x) - 1
        if idx >= len(self.pieces):
            return self.tail if self.tail is not None else P_ZERO
        return self.pieces[idx]

    def __call__(self, x: int | str | Fraction) -> Fraction:
        return self.piece_at(rat(x))(rat(x))

    def is_continuous(self) -> bool:
        segs = list(self.pieces) + [self.tail if self.tail is not None else P_ZERO]
        for b, left, right in zip(self.breakpoints[1:], segs, segs[1:]):
            if left(b) != right(b):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "breakpoints": [rat_str(b) for b in self.breakpoints],
            "pieces": [p.to_json() for p in self.pieces],
            "tail": None if self.tail is None else self.tail.to_json(),
        }

    @staticmethod
    def from_json(data: dict) -> "PiecewisePoly":
        if not isinstance(data, dict):
            raise InputError("piecewise JSON must be an object")
        try:
            bps = data["breakpoints"]
            pcs = data["pieces"]
        except KeyError as exc:
            raise InputError(f"piecewise JSON missing key {exc}") from None
        tail = data.get("tail")
        return PiecewisePoly.build(
            [rat(b) for b in bps],
            [Polynomial.from_json(p) for p in pcs],
            None if tail is None else Polynomial.from_json(tail),
        )

    def __str__(self) -> str:
        parts = [
            f"[{a}, {b}): {p}"
            for a, b, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces)
        ]
        if self.tail is not None:
            parts.append(f"[{self.breakpoints[-1]}, oo): {self.tail}")
        return "{" + "; ".join(parts) + "}" if parts else "{0}"


def pw_eval(f: PiecewisePoly, x: int | str | Fraction) -> Fraction:
    return f(x)


def pw_integrate(f: PiecewisePoly) -> Fraction:
    """Exact integral over [0, oo); requires compact support."""
    if f.tail is not None:
        raise ValidationError("cannot integrate a function with unbounded support")
    total = Fraction(0)
    for a, b, p in zip(f.breakpoints, f.breakpoints[1:], f.pieces):
        anti = p.antiderivative()
        total += anti(b) - anti(a)
    return total


def pw_combine(
    f: PiecewisePoly,
    g: PiecewisePoly,
    op: Callable[[Polynomial, Polynomial], Polynomial],
) -> PiecewisePoly:
    """Apply a polynomial binary operation pointwise on the union refinement."""
    cuts = sorted(set(f.breakpoints) | set(g.breakpoints))
    pieces = [op(f.piece_at(a), g.piece_at(a)) for a in cuts[:-1]]
    f_tail = f.tail if f.tail is not None else P_ZERO
    g_tail = g.tail if g.tail is not None else P_ZERO
    tail = op(f_tail, g_tail)
    return PiecewisePoly.build(cuts, pieces, None if tail.is_zero() else tail)


def pw_add(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return pw_combine(f, g, lambda a, b: a + b)


def pw_sub(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return pw_combine(f, g, lambda a, b: a - b)


def pw_mul(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return pw_combine(f, g, lambda a, b: a * b)


def pw_scale(f: PiecewisePoly, k: int | str | Fraction) -> PiecewisePoly:
    k = rat(k)
    tail = None if f.tail is None else f.tail.scale(k)
    return PiecewisePoly.build(
        f.breakpoints, [p.scale(k) for p in f.pieces], tail
    )


def pw_rescale_arg(
    f: PiecewisePoly, c: int | str | Fraction, s: int | str | Fraction
) -> PiecewisePoly:
    """x |-> s * f(c * x) for c > 0.  Integrals scale by s/c exactly."""
    c, s = rat(c), rat(s)
    if c <= 0:
        raise DomainError(f"argument rescale factor must be positive, got {c}")
    pieces = [p.compose_linear(c, Fraction(0)).scale(s) for p in f.pieces]
    tail = None
    if f.tail is not None:
        tail = f.tail.compose_linear(c, Fraction(0)).scale(s)
    return PiecewisePoly.build([b / c for b in f.breakpoints], pieces, tail)


# ---------------------------------------------------------------------------
# sup distance: exact where critical points are rational, certified otherwise


def _poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    quot = [Fraction(0)] * max(0, len(rem) - len(b.coeffs) + 1)
    while len(rem) >= len(b.coeffs) and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - len(b.coeffs)
        factor = rem[-1] / b.coeffs[-1]
        quot[shift] = factor
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= factor * c
        rem.pop()
    return Polynomial.of(*quot), Polynomial.of(*rem)


def _poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        _, rem = _poly_divmod(a, b)
        a, b = b, rem
    if a.is_zero():
        return a
    return a.scale(1 / a.coeffs[-1])


def _sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, rem = _poly_divmod(chain[-2], chain[-1])
        if rem.is_zero():
            break
        chain.append(-rem)
    return [q for q in chain if not q.is_zero()]

def _sign_variations(chain: list[Polynomial], x: Fraction) -> int:
    signs = [v for q in chain if (v := q(x)) != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(p: Polynomial, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of p in (a, b], by Sturm's theorem.

    Requires p(a) != 0 for the textbook statement to apply verbatim; callers
    here only pass polynomials with no rational roots, so both endpoints are
    automatically non-roots.
    """
    if p.is_zero():
        raise DomainError("root count of the zero polynomial")
    chain = _sturm_chain(p)
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def _bounded_divisors(n: int, cap: int = 1_000_000) -> list[int] | None:
    """All positive divisors of |n|, or None when trial division would be slow."""
    n = abs(n)
    if n == 0:
        return None
    if n > cap * cap:
        return None
    divs = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            if d != n // d:
                divs.append(n // d)
        d += 1
        if d > cap:
            return None
    return sorted(divs)


def rational_roots(p: Polynomial) -> list[Fraction] | None:
    """Distinct rational roots of p, or None if the candidate search was capped."""
    if p.is_zero():
        raise DomainError("roots of the zero polynomial")
    coeffs = list(p.coeffs)
    roots = []
    if coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) <= 1:
        return roots
    from math import lcm

    scale = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    lead, const = ints[-1], ints[0]
    num_divs = _bounded_divisors(const)
    den_divs = _bounded_divisors(lead)
    if num_divs is None or den_divs is None:
        return None
    seen = set()
    for num in num_divs:
        for den in den_divs:
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in seen:
                    seen.add(cand)
                    if p(cand) == 0:
                        roots.append(cand)
    return sorted(set(roots))


def _poly_abs_sup(p: Polynomial, a: Fraction, b: Fraction) -> Fraction:
    """sup of |p| over [a, b]: exact when every critical point in (a, b) is
    rational, else a certified upper bound (dense sampling + Lipschitz pad).

    Exactness is decided rigorously: deflate the rational roots out of p',
    leaving a cofactor with no rational roots (hence nonzero at the rational
    endpoints), and ask Sturm whether that cofactor has real roots in (a, b).
    """
    candidates = [a, b]
    if p.degree >= 2:
        dp = p.derivative()
        roots = rational_roots(dp)
        exact = False
        if roots is not None:
            candidates.extend(r for r in roots if a < r < b)
            if dp.degree >= 2:
                cofactor = _poly_divmod(dp, _poly_gcd(dp, dp.derivative()))[0]
            else:
                cofactor = dp
            for r in roots:
                while cofactor(r) == 0:
                    cofactor = _poly_divmod(cofactor, Polynomial.of(-r, 1))[0]
            if cofactor.degree <= 0:
                exact = True
            else:
                # no rational roots left, so cofactor(a) != 0 != cofactor(b)
                exact = count_real_roots(cofactor, a, b) == 0
        if not exact:
            # certified fallback: sample max + L*h/2 with L >= sup|p'| on [a, b]
            mx = max(abs(a), abs(b))
            lip = sum(
                abs(c) * (mx ** i) for i, c in enumerate(dp.coeffs)
            )
            h = (b - a) / _SUP_SAMPLES
            sample_max = max(
                abs(p(a + h * i)) for i in range(_SUP_SAMPLES + 1)
            )
            return max(
                sample_max + lip * h / 2, *(abs(p(c)) for c in candidates)
            )
    return max(abs(p(c)) for c in candidates)


def pw_sup_distance(f: PiecewisePoly, g: PiecewisePoly) -> Fraction:
    """sup |f - g| over [0, oo).

    Exact for pieces of degree <= 2 and whenever all critical points are
    rational; otherwise returns a certified upper bound.  Raises if the
    difference grows without bound.
    """
    diff = pw_sub(f, g)
    sup = Fraction(0)
    if diff.tail is not None:
        if diff.tail.degree >= 1:
            raise ValidationError("sup distance is unbounded (divergent tails)")
        sup = abs(diff.tail.coeffs[0])
    for a, b, p in zip(diff.breakpoints, diff.breakpoints[1:], diff.pieces):
        if not p.is_zero():
            sup = max(sup, _poly_abs_sup(p, a, b))
        # closure values at the right end still bound the open-interval sup
    return sup


def pw_to_json(f: PiecewisePoly) -> dict:
    return f.to_json()


def pw_from_json(data: dict) -> PiecewisePoly:
    return PiecewisePoly.from_json(data)
