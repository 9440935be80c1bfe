from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homfano.bwb import (
    CohomologyProfile,
    Flag,
    Grassmannian,
    LabelError,
    Projective,
    Space,
    WeightedFactorError,
    WeightedProjective,
    add_labels,
    bott,
    brute_bott_factor,
    canonical_bundle_label,
    canonical_label,
    check_label,
    dual_label,
    euler_char,
    line_degrees,
)

from oracles import projective_h, weyl_dim_bruteforce
from strategies import space_and_label

GR24 = Space((Grassmannian(2, 4),))


def test_projective_is_gr1() -> None:
    p3, g14 = Projective(3), Grassmannian(1, 4)
    assert (p3.k, p3.n, p3.block_sizes, p3.dim) == (g14.k, g14.n, g14.block_sizes, g14.dim)
    for d in range(-6, 4):
        a, b = Space((p3,)), Space((g14,))
        assert bott(a, a.line_label((d,))).profile == bott(b, b.line_label((d,))).profile


def test_factor_dimensions() -> None:
    assert Grassmannian(2, 5).dim == 6
    assert Flag((1, 2), 4).dim == 5
    assert Flag((1, 2), 5).dim == 7


def test_invalid_factors() -> None:
    with pytest.raises(ValueError):
        Grassmannian(0, 3)
    with pytest.raises(ValueError):
        WeightedProjective((1,))


def test_gr24_plucker_sections() -> None:
    # O(1) is (0,0 | -1,-1) up to the global shift
    label = canonical_label([(0, 0, -1, -1)])
    assert label == GR24.line_label((1,))
    res = bott(GR24, label)
    assert res.profile.values == (6, 0, 0, 0, 0)
    assert res.degree == 0


def test_gr24_canonical_bundle() -> None:
    label = canonical_label([(-4, -4, 0, 0)])
    assert label == canonical_bundle_label(GR24)
    assert bott(GR24, label).profile.values == (0, 0, 0, 0, 1)


def test_flag_line_bundle_sections() -> None:
    space = Space((Flag((1, 2), 5),))
    label = canonical_label([(0, 0, 0, -2, -3)])
    assert label == space.line_label((1, 2))
    assert bott(space, label).profile.values[0] == 175


@pytest.mark.parametrize(
    ("space", "degrees", "chi"),
    [
        (Space((Projective(3),)), (4,), 35),
        (GR24, (-4,), 1),
        (Space((Grassmannian(2, 5),)), (2,), 50),
    ],
)
def test_euler_char_examples(space, degrees, chi) -> None:
    assert euler_char(space, space.line_label(degrees)) == chi


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", range(-8, 5))
def test_projective_line_bundles(n: int, d: int) -> None:
    space = Space((Projective(n),))
    assert list(bott(space, space.line_label((d,))).profile.values) == projective_h(n, d)


def test_weighted_factor_rejected() -> None:
    space = Space((WeightedProjective((1, 1, 2)),))
    with pytest.raises(WeightedFactorError):
        bott(space, ((0, 0, 0),))


def test_label_validation() -> None:
    with pytest.raises(LabelError):
        check_label(GR24, ((0, 1, 0, 0),))
    with pytest.raises(LabelError):
        check_label(GR24, ((0, 0, 0),))


def test_line_degrees_inverse() -> None:
    space = Space((Projective(2), Flag((1, 2), 4)))
    assert line_degrees(space, space.line_label((3, -1, 2))) == (3, -1, 2)


def test_profile_helpers() -> None:
    p = CohomologyProfile.exact([1, 0, 2])
    assert p.is_exact and p.euler == 3
    assert p.interval(5) == (0, 0)
    assert p.scale(2).values == (2, 0, 4)
    assert p.nonzero() == {0: 1, 2: 2}


@given(space_and_label())
def test_bott_matches_permutation_search(data) -> None:
    space, label = data
    res = bott(space, label)
    degree, size, dead = 0, 1, False
    for f, vec in zip(space.factors, label):
        found = brute_bott_factor(f.n, vec)
        if found is None:
            dead = True
            break
        degree += found[0]
        size *= weyl_dim_bruteforce(found[1])
    if dead:
        assert res.degree is None and res.profile.euler == 0
    else:
        assert res.degree == degree
        assert res.profile.values[degree] == size


@given(space_and_label())
def test_serre_duality(data) -> None:
    space, label = data
    partner = add_labels(dual_label(space, label), canonical_bundle_label(space))
    a = bott(space, label).profile.values
    b = bott(space, partner).profile.values
    assert a == tuple(reversed(b))


@given(space_and_label())
def test_acyclicity_symmetric_under_duality(data) -> None:
    space, label = data
    partner = add_labels(dual_label(space, label), canonical_bundle_label(space))
    assert (bott(space, label).degree is None) == (bott(space, partner).degree is None)


@given(space_and_label(max_dim=6), space_and_label(max_dim=4))
def test_kunneth(a, b) -> None:
    (sa, la), (sb, lb) = a, b
    product = Space(sa.factors + sb.factors)
    pa, pb = bott(sa, la).profile.values, bott(sb, lb).profile.values
    conv = [0] * (product.dim + 1)
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            conv[i + j] += x * y
    assert list(bott(product, la + lb).profile.values) == conv


@given(space_and_label(), st.integers(-3, 3))
def test_global_shift_invariance(data, shift) -> None:
    space, label = data
    shifted = tuple(tuple(x + shift for x in vec) for vec in label)
    assert bott(space, canonical_label(shifted)).profile == bott(space, label).profile
