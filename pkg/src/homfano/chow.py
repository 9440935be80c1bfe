"""Intersection numbers by torus fixed-point localization.

At a fixed point each Levi block of each factor is spanned by a subset of the
coordinate lines of V, so a weight vector of a homogeneous bundle becomes an
integer once the torus parameters are fixed.  Every integral is evaluated for
two unrelated parameter choices; a non-integral or parameter-dependent answer
means a bug and raises :class:`LocalizationError`.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial

from .bundlecalc import BundleExpr, DecomposedBundle, normalize, tangent
from .bwb import Factor, Label, Space, label_blocks
from .combinat import block_weight_multiset, weight_multiset

FixedPoint = tuple[tuple[tuple[int, ...], ...], ...]  # per factor, per block, coordinates


class LocalizationError(ArithmeticError):
    """A localization sum was not an integer or depended on the parameters."""


class CodimensionError(ValueError):
    pass


def _primes(count: int) -> list[int]:
    out: list[int] = []
    cand = 2
    while len(out) < count:
        if all(cand % p for p in out if p * p <= cand):
            out.append(cand)
        cand += 1
    return out


def default_params(space: Space) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """The two parameter sets: primes, then i^2 + 1."""
    first = tuple(tuple(_primes(f.n)) for f in space.factors)
    second = tuple(tuple(i * i + 1 for i in range(1, f.n + 1)) for f in space.factors)
    return first, second


def _factor_points(f: Factor) -> list[tuple[tuple[int, ...], ...]]:
    sizes = f.block_sizes
    out = []

    def rec(j: int, left: tuple[int, ...], acc: list[tuple[int, ...]]) -> None:
        if j == len(sizes) - 1:
            out.append(tuple(acc + [left]))
            return
        for pick in combinations(left, sizes[j]):
            rest = tuple(x for x in left if x not in pick)
            rec(j + 1, rest, acc + [pick])

    rec(0, tuple(range(f.n)), [])
    return out


def fixed_points(space: Space) -> Iterator[FixedPoint]:
    space.require_unweighted()
    yield from product(*(_factor_points(f) for f in space.factors))


def count_fixed_points(space: Space) -> int:
    total = 1
    for f in space.factors:
        total *= len(_factor_points(f))
    return total


@lru_cache(maxsize=20_000)
def _label_weight_vectors(space: Space, label: Label) -> tuple[tuple[tuple[int, ...], int], ...]:
    blocks = []
    for f, vec in zip(space.factors, label):
        blocks.extend(label_blocks(f, vec))
    return tuple(block_weight_multiset(blocks).items())


def bundle_weights(bundle: DecomposedBundle) -> list[tuple[int, ...]]:
    """All weights of the bundle (with repetition) in concatenated block coordinates."""
    out: list[tuple[int, ...]] = []
    for lab, m in bundle.total().items():
        for w, c in _label_weight_vectors(bundle.space, lab):
            out.extend([w] * (c * m))
    return out


@dataclass
class PointData:
    """Evaluated torus data at one fixed point."""

    space: Space
    point: FixedPoint
    coord_values: tuple[int, ...]  # value of t at each concatenated block coordinate

    def evaluate(self, weight: Sequence[int]) -> int:
        return sum(w * t for w, t in zip(weight, self.coord_values) if w)

    def roots(self, bundle: DecomposedBundle | BundleExpr) -> list[int]:
        if isinstance(bundle, BundleExpr):
            bundle = normalize(bundle, self.space)
        return [self.evaluate(w) for w in bundle_weights(bundle)]

    def c1(self, bundle: DecomposedBundle | BundleExpr) -> int:
        return sum(self.roots(bundle))

    def ctop(self, bundle: DecomposedBundle | BundleExpr) -> int:
        out = 1
        for r in self.roots(bundle):
            out *= r
        return out

    def chern(self, bundle: DecomposedBundle | BundleExpr, i: int) -> int:
        return elementary(self.roots(bundle), i)

    def line(self, degrees: Sequence[int]) -> int:
        """Equivariant first Chern class of O(d_1, ..., d_s)."""
        lab = self.space.line_label(degrees)
        (w, _), = _label_weight_vectors(self.space, lab)
        return self.evaluate(w)

    def tangent_weights(self) -> list[int]:
        """Honest torus weights of T_X; canonical labels carry a det(V) shift and are unsuitable here."""
        out: list[int] = []
        pos = 0
        for blocks in self.point:
            vals: list[list[int]] = []
            for blk in blocks:
                vals.append(list(self.coord_values[pos:pos + len(blk)]))
                pos += len(blk)
            for a in range(len(vals)):
                for b in range(a + 1, len(vals)):
                    out.extend(x - y for x in vals[a] for y in vals[b])
        return out

    def schur_class(self, factor: int, lam: Sequence[int]) -> int:
        """The Schubert class sigma_lam of a Grassmannian factor (0-based), i.e. s_lam(Q)."""
        f = self.space.factors[factor]
        q = len(f.block_sizes) and f.block_sizes[0]
        lam = tuple(lam)
        if len(lam) > q:
            return 0
        full = lam + (0,) * (q - len(lam))
        offs = sum(len(g.block_sizes) and g.n for g in self.space.factors[:factor])
        vals = self.coord_values[offs:offs + q]
        total = 0
        for e, c in weight_multiset(full).items():
            term = c
            for x, k in zip(vals, e):
                term *= x ** k
            total += term
        return total


def elementary(values: Sequence[int], i: int) -> int:
    e = [1] + [0] * i
    for v in values:
        for j in range(i, 0, -1):
            e[j] += e[j - 1] * v
    return e[i]


def _coord_values(space: Space, point: FixedPoint, params) -> tuple[int, ...]:
    out: list[int] = []
    for f, blocks, ts in zip(space.factors, point, params):
        for blk in blocks:
            out.extend(ts[c] for c in blk)
    return tuple(out)


def _sum_over_points(space: Space, params, func: Callable[[PointData], Fraction]) -> Fraction:
    total = Fraction(0)
    for pt in fixed_points(space):
        total += func(PointData(space, pt, _coord_values(space, pt, params)))
    return total


def _checked(values: list[Fraction], what: str) -> int:
    first = values[0]
    if first.denominator != 1:
        raise LocalizationError(f"{what}: non-integral localization sum {first}")
    for v in values[1:]:
        if v != first:
            raise LocalizationError(f"{what}: parameter dependence ({first} vs {v})")
    return int(first)


def integrate(
    space: Space,
    integrand: Callable[[PointData], int | Fraction],
    degree: int | None = None,
    params=None,
) -> int:
    """Integrate a class given by its equivariant value at each fixed point.

    ``degree`` is the cohomological degree (in units of divisors) of the
    integrand; integrals of classes of the wrong degree are zero.
    """
    space.require_unweighted()
    if degree is not None and degree != space.dim:
        return 0
    param_sets = [params] if params is not None else list(default_params(space))

    def local(pd: PointData) -> Fraction:
        den = 1
        for w in pd.tangent_weights():
            den *= w
        return Fraction(integrand(pd)) / den

    return _checked([_sum_over_points(space, ps, local) for ps in param_sets], "integrate")


def anticanonical_degree(space: Space, F: BundleExpr | DecomposedBundle, d: int | None = None) -> int:
    """(-K_Y)^d for the zero locus Y of a general section of F."""
    bundle = F if isinstance(F, DecomposedBundle) else normalize(F, space)
    expected = space.dim - bundle.rank
    if d is None:
        d = expected
    if d != expected:
        raise CodimensionError(f"zero locus has dimension {expected}, not {d}")
    def integrand(pd: PointData) -> int:
        roots = pd.roots(bundle)
        top = 1
        for r in roots:
            top *= r
        antik = sum(pd.tangent_weights()) - sum(roots)
        return antik ** d * top

    return integrate(space, integrand)


# ---------------------------------------------------------------------------
# Riemann-Roch by localization


@lru_cache(maxsize=64)
def _todd_coefficients(order: int) -> tuple[Fraction, ...]:
    """Coefficients of x / (1 - e^{-x}) up to x^order."""
    # 1/(x/(1-e^{-x})) = (1 - e^{-x})/x = sum_{k>=0} (-1)^k x^k / (k+1)!
    inv = [Fraction((-1) ** k, factorial(k + 1)) for k in range(order + 1)]
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for k in range(1, order + 1):
        out[k] = -sum(inv[j] * out[k - j] for j in range(1, k + 1))
    return tuple(out)


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def hrr_chi(space: Space, E: DecomposedBundle | BundleExpr) -> int:
    """Euler characteristic from the holomorphic Lefschetz formula."""
    bundle = E if isinstance(E, DecomposedBundle) else normalize(E, space)
    space.require_unweighted()
    N = space.dim
    todd = _todd_coefficients(N)
    weights = bundle_weights(bundle)

    def local(pd: PointData) -> Fraction:
        taus = pd.tangent_weights()
        ws = [pd.evaluate(w) for w in weights]
        # sum_w e^{eps w}, truncated
        series = [Fraction(sum(w ** k for w in ws), factorial(k)) for k in range(N + 1)]
        den = 1
        for tau in taus:
            den *= tau
            factor = [todd[k] * tau ** k for k in range(N + 1)]
            series = _series_mul(series, factor, N)
        return series[N] / den

    return _checked([_sum_over_points(space, ps, local) for ps in default_params(space)], "hrr_chi")


def c1_tangent_degrees(space: Space) -> tuple[int, ...]:
    """First Chern class of T_X as a divisor vector."""
    return tangent(space).first_chern()
