"""Spaces and Bott's algorithm for irreducible homogeneous bundles.

Label convention.  On a factor with ambient vector space V of rank n, an
irreducible homogeneous bundle is given by a length-n integer vector which is
weakly decreasing on each block of the Levi subgroup.  Blocks are listed from
the quotient side: for Gr(k, n) the blocks are (Q | U) of sizes (n-k, k); for
Fl(k_1 < ... < k_r; n) they are (V/U_r | U_r/U_{r-1} | ... | U_1).  The
standard representation of a block has a single 1 at the first entry of that
block, so O(1) = det Q carries 1 on the Q block.

Labels are stored per factor and normalised so that the last entry of every
factor is zero; this removes the determinant of V, which is geometrically
trivial.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .combinat import IntVector, is_dominant, weyl_dim

Label = tuple[IntVector, ...]  # one IntVector per factor


class WeightedFactorError(ValueError):
    """Computation requested on a space that contains a weighted factor."""


class LabelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# factors


@dataclass(frozen=True)
class Factor:
    """Base class for the factors of an ambient space."""

    @property
    def weighted(self) -> bool:
        return False

    @property
    def n(self) -> int:
        raise NotImplementedError

    @property
    def block_sizes(self) -> tuple[int, ...]:
        raise NotImplementedError

    @property
    def picard_rank(self) -> int:
        raise NotImplementedError

    @property
    def dim(self) -> int:
        sizes = self.block_sizes
        return sum(sizes[a] * sizes[b] for a in range(len(sizes)) for b in range(a + 1, len(sizes)))

    def block_offsets(self) -> tuple[int, ...]:
        out, pos = [], 0
        for b in self.block_sizes:
            out.append(pos)
            pos += b
        return tuple(out)

    def picard_generator(self, i: int) -> IntVector:
        """Label of the i-th Picard generator (0-based)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Grassmannian(Factor):
    k: int
    nn: int

    def __post_init__(self) -> None:
        if not 0 < self.k < self.nn:
            raise ValueError(f"Gr({self.k},{self.nn}) needs 0 < k < n")

    @property
    def n(self) -> int:
        return self.nn

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return (self.nn - self.k, self.k)

    @property
    def picard_rank(self) -> int:
        return 1

    def picard_generator(self, i: int) -> IntVector:
        if i != 0:
            raise IndexError(i)
        return (1,) * (self.nn - self.k) + (0,) * self.k

    @property
    def subspace_dims(self) -> tuple[int, ...]:
        return (self.k,)

    def __str__(self) -> str:
        return f"Gr({self.k},{self.nn})"


@dataclass(frozen=True)
class Projective(Grassmannian):
    """P^m, identified with Gr(1, m+1)."""

    def __init__(self, m: int) -> None:
        object.__setattr__(self, "k", 1)
        object.__setattr__(self, "nn", m + 1)
        if m < 1:
            raise ValueError("P(m) needs m >= 1")

    @property
    def m(self) -> int:
        return self.nn - 1

    def __str__(self) -> str:
        return f"P({self.nn - 1})"

    def __repr__(self) -> str:
        return f"Projective({self.nn - 1})"


@dataclass(frozen=True)
class Flag(Factor):
    ks: tuple[int, ...]
    nn: int

    def __post_init__(self) -> None:
        ks = tuple(self.ks)
        object.__setattr__(self, "ks", ks)
        if not ks or any(a >= b for a, b in zip(ks, ks[1:])) or ks[0] <= 0 or ks[-1] >= self.nn:
            raise ValueError(f"invalid flag dimensions {ks} in {self.nn}")

    @property
    def n(self) -> int:
        return self.nn

    @property
    def block_sizes(self) -> tuple[int, ...]:
        dims = (0,) + self.ks + (self.nn,)
        steps = [dims[i + 1] - dims[i] for i in range(len(dims) - 1)]
        return tuple(reversed(steps))

    @property
    def picard_rank(self) -> int:
        return len(self.ks)

    @property
    def subspace_dims(self) -> tuple[int, ...]:
        return self.ks

    def picard_generator(self, i: int) -> IntVector:
        # O(1) pulled back from Gr(k_{i+1}, n) is det(V/U_{i+1}), which covers
        # the first r - i blocks
        r = len(self.ks)
        if not 0 <= i < r:
            raise IndexError(i)
        out: list[int] = []
        for j, b in enumerate(self.block_sizes):
            out.extend([1 if j <= r - 1 - i else 0] * b)
        return tuple(out)

    def __str__(self) -> str:
        return "Fl(" + ",".join(map(str, self.ks)) + f";{self.nn})"


@dataclass(frozen=True)
class WeightedProjective(Factor):
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) < 2 or any(w <= 0 for w in self.weights):
            raise ValueError("weighted projective space needs >= 2 positive weights")

    @property
    def weighted(self) -> bool:
        return True

    @property
    def picard_rank(self) -> int:
        return 1

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def n(self) -> int:
        raise WeightedFactorError(str(self))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        raise WeightedFactorError(str(self))

    def __str__(self) -> str:
        return "WP(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class Space:
    """A product of Grassmannian, flag and (stored-only) weighted factors."""

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a space needs at least one factor")

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def picard_rank(self) -> int:
        return sum(f.picard_rank for f in self.factors)

    @property
    def weighted(self) -> bool:
        return any(f.weighted for f in self.factors)

    def require_unweighted(self) -> None:
        if self.weighted:
            raise WeightedFactorError(f"{self} contains a weighted factor; it is stored only")

    def picard_slices(self) -> tuple[tuple[int, int], ...]:
        out, pos = [], 0
        for f in self.factors:
            out.append((pos, pos + f.picard_rank))
            pos += f.picard_rank
        return tuple(out)

    def trivial_label(self) -> Label:
        self.require_unweighted()
        return tuple((0,) * f.n for f in self.factors)

    def line_label(self, degrees: Sequence[int]) -> Label:
        """Label of the line bundle O(d_1, ..., d_s)."""
        self.require_unweighted()
        if len(degrees) != self.picard_rank:
            raise LabelError(f"expected {self.picard_rank} degrees, got {len(degrees)}")
        out = []
        for f, (a, b) in zip(self.factors, self.picard_slices()):
            vec = [0] * f.n
            for i, d in enumerate(degrees[a:b]):
                gen = f.picard_generator(i)
                for j in range(f.n):
                    vec[j] += d * gen[j]
            out.append(tuple(vec))
        return canonical_label(out)

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


def canonical_label(label: Iterable[Sequence[int]]) -> Label:
    out = []
    for vec in label:
        vec = tuple(vec)
        s = vec[-1] if vec else 0
        out.append(tuple(x - s for x in vec) if s else vec)
    return tuple(out)


def check_label(space: Space, label: Label) -> None:
    space.require_unweighted()
    if len(label) != len(space.factors):
        raise LabelError("label has the wrong number of factors")
    for f, vec in zip(space.factors, label):
        if len(vec) != f.n:
            raise LabelError(f"label {vec} does not fit {f}")
        pos = 0
        for b in f.block_sizes:
            if not is_dominant(vec[pos:pos + b]):
                raise LabelError(f"label {vec} is not dominant on the blocks of {f}")
            pos += b


def label_blocks(factor: Factor, vec: IntVector) -> tuple[IntVector, ...]:
    out, pos = [], 0
    for b in factor.block_sizes:
        out.append(tuple(vec[pos:pos + b]))
        pos += b
    return tuple(out)


def label_rank(space: Space, label: Label) -> int:
    r = 1
    for f, vec in zip(space.factors, label):
        for blk in label_blocks(f, vec):
            r *= weyl_dim(blk)
    return r


def dual_label(space: Space, label: Label) -> Label:
    out = []
    for f, vec in zip(space.factors, label):
        parts: list[int] = []
        for blk in label_blocks(f, vec):
            parts.extend(-x for x in reversed(blk))
        out.append(tuple(parts))
    return canonical_label(out)


def add_labels(a: Label, b: Label) -> Label:
    return canonical_label(tuple(x + y for x, y in zip(u, v)) for u, v in zip(a, b))


def canonical_bundle_label(space: Space) -> Label:
    """Label of omega_X: on Gr(k,n) this is O(-n), in general minus the sum of roots."""
    out = []
    for f in space.factors:
        # det of the tangent bundle: sum over block pairs a < b of |b| e_a - |a| e_b
        sizes = f.block_sizes
        vec: list[int] = []
        for j, bj in enumerate(sizes):
            val = sum(sizes[b] for b in range(j + 1, len(sizes))) - sum(sizes[a] for a in range(j))
            vec.extend([-val] * bj)
        out.append(tuple(vec))
    return canonical_label(out)


def line_degrees(space: Space, label: Label) -> tuple[int, ...]:
    """Inverse of Space.line_label for labels that are constant on blocks."""
    degs: list[int] = []
    for f, vec in zip(space.factors, label):
        consts = []
        for blk in label_blocks(f, vec):
            if len(set(blk)) > 1:
                raise LabelError(f"{vec} is not a line bundle on {f}")
            consts.append(blk[0])
        r = f.picard_rank
        degs.extend(consts[r - i - 1] - consts[r - i] for i in range(r))
    return tuple(degs)


# ---------------------------------------------------------------------------
# cohomology profiles


@dataclass(frozen=True)
class CohomologyProfile:
    """Per-degree intervals [lb_q, ub_q] together with the exact Euler characteristic."""

    lb: tuple[int, ...]
    ub: tuple[int, ...]
    euler: int
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.lb) != len(self.ub):
            raise ValueError("bounds of different length")
        if any(a > b or a < 0 for a, b in zip(self.lb, self.ub)):
            raise ValueError(f"inconsistent bounds {self.lb} {self.ub}")

    @classmethod
    def exact(cls, values: Sequence[int]) -> "CohomologyProfile":
        vals = tuple(int(v) for v in values)
        return cls(vals, vals, sum((-1) ** q * v for q, v in enumerate(vals)))

    @classmethod
    def zero(cls, top: int) -> "CohomologyProfile":
        return cls.exact([0] * (top + 1))

    @property
    def top(self) -> int:
        return len(self.lb) - 1

    @property
    def is_exact(self) -> bool:
        return self.lb == self.ub

    def value(self, q: int) -> int:
        if not 0 <= q < len(self.lb):
            return 0
        if self.lb[q] != self.ub[q]:
            raise ValueError(f"h^{q} is only known to lie in [{self.lb[q]},{self.ub[q]}]")
        return self.lb[q]

    def interval(self, q: int) -> tuple[int, int]:
        if not 0 <= q < len(self.lb):
            return (0, 0)
        return (self.lb[q], self.ub[q])

    @property
    def values(self) -> tuple[int, ...]:
        if not self.is_exact:
            raise ValueError("profile is not exact")
        return self.lb

    def nonzero(self) -> dict[int, int | tuple[int, int]]:
        out: dict[int, int | tuple[int, int]] = {}
        for q, (a, b) in enumerate(zip(self.lb, self.ub)):
            if b:
                out[q] = a if a == b else (a, b)
        return out

    def __add__(self, other: "CohomologyProfile") -> "CohomologyProfile":
        top = max(self.top, other.top)
        lb = tuple(self.interval(q)[0] + other.interval(q)[0] for q in range(top + 1))
        ub = tuple(self.interval(q)[1] + other.interval(q)[1] for q in range(top + 1))
        return CohomologyProfile(lb, ub, self.euler + other.euler)

    def scale(self, m: int) -> "CohomologyProfile":
        return CohomologyProfile(tuple(m * x for x in self.lb), tuple(m * x for x in self.ub), m * self.euler)

    def format(self) -> str:
        parts = []
        for a, b in zip(self.lb, self.ub):
            parts.append(str(a) if a == b else f"[{a},{b}]")
        return "(" + ", ".join(parts) + f"; chi={self.euler})"


# ---------------------------------------------------------------------------
# Bott's algorithm


@dataclass(frozen=True)
class BottResult:
    profile: CohomologyProfile
    degree: int | None  # the unique nonzero degree, None if acyclic
    gl_labels: tuple[IntVector, ...] | None  # per factor GL(n) highest weight of H^degree

    @property
    def dimension(self) -> int:
        return 0 if self.degree is None else self.profile.lb[self.degree]


def _bott_factor(n: int, vec: IntVector) -> tuple[int, IntVector] | None:
    mu = [x + (n - 1 - i) for i, x in enumerate(vec)]
    if len(set(mu)) < n:
        return None
    inversions = sum(1 for i in range(n) for j in range(i + 1, n) if mu[i] < mu[j])
    srt = sorted(mu, reverse=True)
    return inversions, tuple(x - (n - 1 - i) for i, x in enumerate(srt))


@lru_cache(maxsize=200_000)
def bott(space: Space, label: Label) -> BottResult:
    """Cohomology of the irreducible bundle with the given label."""
    check_label(space, label)
    dim = space.dim
    degree = 0
    size = 1
    gl: list[IntVector] = []
    for f, vec in zip(space.factors, label):
        res = _bott_factor(f.n, vec)
        if res is None:
            return BottResult(CohomologyProfile.zero(dim), None, None)
        ell, hw = res
        degree += ell
        size *= weyl_dim(hw)
        gl.append(hw)
    values = [0] * (dim + 1)
    values[degree] = size
    return BottResult(CohomologyProfile.exact(values), degree, tuple(gl))


def euler_char(space: Space, label: Label) -> int:
    return bott(space, label).profile.euler


def weyl_group_orbit_check(n: int, vec: IntVector) -> bool:
    """True when vec + rho is regular; used by tests as a brute-force oracle."""
    mu = [x + (n - 1 - i) for i, x in enumerate(vec)]
    return all(mu[i] != mu[j] for i, j in combinations(range(n), 2))


def brute_bott_factor(n: int, vec: IntVector) -> tuple[int, IntVector] | None:
    """Find the Weyl element by searching all permutations (test oracle)."""
    rho = [n - 1 - i for i in range(n)]
    mu = [x + r for x, r in zip(vec, rho)]
    for perm in permutations(range(n)):
        w = [mu[p] for p in perm]
        if all(w[i] > w[i + 1] for i in range(n - 1)):
            length = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            return length, tuple(a - r for a, r in zip(w, rho))
    return None
