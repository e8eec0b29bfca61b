from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkdensity.combinators import (
    DensityPair,
    module_density,
    rank_from_degrees,
    rescale_density,
    segre,
)
from hkdensity.errors import DomainError, ValidationError
from hkdensity.exact import PiecewisePoly, Polynomial, pw_integrate, pw_scale
from hkdensity.resolution import closed_form_density, koszul_betti

F = Fraction


def tent() -> PiecewisePoly:
    # density of (k[x,y], (x,y)): x on [0,1), 2-x on [1,2)
    return PiecewisePoly.build(
        [0, 1, 2], [Polynomial.of(0, 1), Polynomial.of(2, -1)]
    )


def koszul_pair() -> DensityPair:
    return DensityPair(PiecewisePoly.monomial_tail(F(1), 1), tent(), 2)


def test_density_pair_basics():
    pair = koszul_pair()
    assert pair.ehat == 1
    assert pair.ehk == 1
    defect = pair.defect()
    # F - f is x - x = 0 on [0,1), then x - (2-x) = 2x - 2 on [1,2), x beyond
    assert defect(F(1, 2)) == 0
    assert defect(F(3, 2)) == 1
    assert defect(3) == 3


def test_density_pair_rejects_bad_envelope():
    with pytest.raises(ValidationError):
        # degree 0 envelope for d = 2
        DensityPair(PiecewisePoly.monomial_tail(F(1), 0), tent(), 2)
    with pytest.raises(ValidationError):
        # two-term tail is not a monomial
        DensityPair(
            PiecewisePoly.build([0], [], Polynomial.of(1, 1)), tent(), 2
        )
    with pytest.raises(ValidationError):
        # compactly supported envelope
        DensityPair(tent(), tent(), 2)


def test_density_pair_rejects_bad_density():
    env = PiecewisePoly.monomial_tail(F(1), 1)
    with pytest.raises(ValidationError):
        # noncompact density
        DensityPair(env, env, 2)
    with pytest.raises(ValidationError):
        # jump at x = 1
        DensityPair(
            env,
            PiecewisePoly.build([0, 1, 2], [Polynomial.of(0, 1), Polynomial.of(0)]),
            2,
        )
    with pytest.raises(ValidationError):
        # escapes above the envelope
        DensityPair(env, pw_scale(tent(), 2), 2)
    with pytest.raises(ValidationError):
        DensityPair(env, tent(), 1)


def test_segre_of_two_tents():
    out = segre(koszul_pair(), koszul_pair())
    assert out.d == 3
    assert out.ehat == 1
    assert out.ehk == F(4, 3)
    # defect multiplies, so f = F on [0,1) where either defect vanishes
    assert out.f(F(1, 2)) == F(1, 4)
    assert out.f(F(3, 2)) == F(9, 4) - 1
    assert out.f.support_end == 2


def test_segre_dimension_adds():
    three = segre(koszul_pair(), koszul_pair())
    four = segre(three, koszul_pair())
    assert four.d == 4
    assert four.ehk == pw_integrate(four.f)
    assert four.ehk < four.ehat * F(2**4, 4)


def test_rescale_invariant_table():
    # ambient table of a Koszul pair with twists (2,2); regrade l0=2, rank 2
    amb = closed_form_density(koszul_betti(2, (2, 2)), F(1), 1)
    assert amb.breakpoints == (F(0), F(2), F(4))
    inv = rescale_density(amb, 2, 2)
    assert inv.breakpoints == (F(0), F(1), F(2))
    assert pw_integrate(inv) == pw_integrate(amb) / 2
    assert inv(F(1, 2)) == 1


def test_rescale_rejects_bad_args():
    with pytest.raises(DomainError):
        rescale_density(tent(), 0, 2)
    with pytest.raises(DomainError):
        rescale_density(tent(), 2, 0)


def test_module_density_scales():
    tripled = module_density(tent(), 3)
    assert pw_integrate(tripled) == 3
    assert module_density(tent(), 0).is_zero()
    with pytest.raises(DomainError):
        module_density(tent(), -1)


def test_rank_from_degrees_catalog_values():
    assert rank_from_degrees((2, 3, 3), (6,)) == 3
    assert rank_from_degrees((4, 8, 10), (20,)) == 16
    assert rank_from_degrees((6, 4, 4), (12,)) == 8
    assert rank_from_degrees((6, 8, 12), (24,)) == 24
    assert rank_from_degrees((12, 30, 20), (60,)) == 120
    assert rank_from_degrees((5,), ()) == 5
    with pytest.raises(ValidationError):
        rank_from_degrees((0, 2), (2,))


@settings(max_examples=60, deadline=None)
@given(
    scale=st.fractions(min_value=F(1, 4), max_value=4, max_denominator=8),
    l0=st.integers(min_value=1, max_value=6),
    rank=st.integers(min_value=1, max_value=8),
)
def test_rescale_integral_identity(scale, l0, rank):
    f = pw_scale(tent(), scale)
    out = rescale_density(f, l0, rank)
    assert pw_integrate(out) == pw_integrate(f) / rank
    assert out.support_end == F(2, l0)
