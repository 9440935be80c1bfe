"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import assume
from hypothesis import strategies as st

from homfano.bundlecalc import BundleError, Dual, Ext, LineO, Q, Sym, Twist, U, Wedge, rank
from homfano.bwb import Factor, Flag, Grassmannian, Projective, Space, canonical_label

SMALL_FACTORS: tuple[Factor, ...] = (
    Projective(1),
    Projective(2),
    Projective(3),
    Projective(4),
    Grassmannian(2, 4),
    Grassmannian(2, 5),
    Flag((1, 2), 3),
    Flag((1, 2), 4),
)


@st.composite
def spaces(draw, max_dim: int = 8, max_factors: int = 3) -> Space:
    factors: list[Factor] = []
    budget = max_dim
    count = draw(st.integers(1, max_factors))
    for _ in range(count):
        options = [f for f in SMALL_FACTORS if f.dim <= budget]
        if not options:
            break
        f = draw(st.sampled_from(options))
        factors.append(f)
        budget -= f.dim
    return Space(tuple(factors))


@st.composite
def labels(draw, space: Space, lo: int = -4, hi: int = 4):
    out = []
    for f in space.factors:
        vec: list[int] = []
        for size in f.block_sizes:
            block = sorted(draw(st.lists(st.integers(lo, hi), min_size=size, max_size=size)), reverse=True)
            vec.extend(block)
        out.append(tuple(vec))
    return canonical_label(out)


@st.composite
def space_and_label(draw, max_dim: int = 8, lo: int = -4, hi: int = 4):
    space = draw(spaces(max_dim))
    return space, draw(labels(space, lo, hi))


def atoms_for(space: Space) -> list:
    out = []
    for i, f in enumerate(space.factors, start=1):
        if isinstance(f, Flag):
            for j in range(1, len(f.ks) + 1):
                out += [U(i, j), Q(i, j)]
        else:
            out += [U(i), Q(i)]
    return out


@st.composite
def bundle_exprs(draw, space: Space, depth: int = 2, max_rank: int = 12):
    """Random bundle expressions of modest rank over ``space``."""
    rho = space.picard_rank
    degrees = st.lists(st.integers(-2, 2), min_size=rho, max_size=rho).map(tuple)

    def leaf():
        return st.one_of(degrees.map(LineO), st.sampled_from(atoms_for(space)))

    def build(level: int):
        if level == 0:
            return leaf()
        sub = build(level - 1)
        return st.one_of(
            leaf(),
            sub.map(Dual),
            st.tuples(sub, degrees).map(lambda t: Twist(t[0], t[1])),
            st.tuples(sub, sub).map(lambda t: t[0] + t[1]),
            st.tuples(sub, sub).map(lambda t: t[0] * t[1]),
            st.tuples(sub, sub).map(lambda t: Ext((t[0], t[1]))),
            st.tuples(st.integers(1, 2), sub).map(lambda t: Wedge(t[0], t[1])),
            st.tuples(st.integers(1, 2), sub).map(lambda t: Sym(t[0], t[1])),
        )

    expr = draw(build(depth))
    try:
        r = rank(expr, space)
    except BundleError:
        r = 0
    assume(0 < r <= max_rank)
    return expr
