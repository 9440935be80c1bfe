"""Homogeneous bundle expressions and their normal forms.

A :class:`DecomposedBundle` is an ordered list of completely reducible blocks,
listed from sub to quotient.  It records the associated graded of a
filtration and nothing about extension classes; Euler characteristics only
depend on this data, and individual cohomology groups are bounded from it.

Schur functors of a sum use the coproduct rule
``S_lam(A + B) = sum c^lam_{mu nu} S_mu(A) (x) S_nu(B)``; the only plethysm
ever taken is ``S_mu`` of a single irreducible, which is read off its weight
multiset and decomposed again.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .bwb import (
    Flag,
    Grassmannian,
    Label,
    LabelError,
    Space,
    add_labels,
    canonical_label,
    dual_label,
    label_blocks,
    label_rank,
    line_degrees,
)
from .combinat import (
    Partition,
    as_partition,
    block_weight_multiset,
    decompose_character,
    gl_tensor,
    lr_multiply,
    schur_of_weights,
    weyl_dim,
)

Rep = dict  # dict[Label, int], a completely reducible bundle


class BundleError(ValueError):
    """Malformed bundle expression for the given space."""


# ---------------------------------------------------------------------------
# expression tree


class BundleExpr:
    """Base class of the syntax tree.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __add__(self, other: "BundleExpr") -> "BundleExpr":
        return DirectSum(_flatten(DirectSum, (self, other)))

    def __mul__(self, other: "BundleExpr") -> "BundleExpr":
        return Tensor(_flatten(Tensor, (self, other)))

    def __str__(self) -> str:
        return to_dsl(self)


def _flatten(kind: type, items: Iterable[BundleExpr]) -> tuple[BundleExpr, ...]:
    out: list[BundleExpr] = []
    for it in items:
        if isinstance(it, kind):
            out.extend(it.args)  # type: ignore[attr-defined]
        else:
            out.append(it)
    return tuple(out)


@dataclass(frozen=True)
class LineO(BundleExpr):
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class Taut(BundleExpr):
    """U or Q of a factor (1-based); ``index`` picks U_{k_i} on a flag factor."""

    kind: str
    factor: int
    index: int | None = None


@dataclass(frozen=True)
class ZeroBundle(BundleExpr):
    """The rank-0 bundle, whose zero locus is the whole space."""


@dataclass(frozen=True)
class Dual(BundleExpr):
    arg: BundleExpr


@dataclass(frozen=True)
class Twist(BundleExpr):
    arg: BundleExpr
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class Tensor(BundleExpr):
    args: tuple[BundleExpr, ...]


@dataclass(frozen=True)
class DirectSum(BundleExpr):
    args: tuple[BundleExpr, ...]


@dataclass(frozen=True)
class Wedge(BundleExpr):
    k: int
    arg: BundleExpr


@dataclass(frozen=True)
class Sym(BundleExpr):
    k: int
    arg: BundleExpr


@dataclass(frozen=True)
class Schur(BundleExpr):
    lam: Partition
    arg: BundleExpr


@dataclass(frozen=True)
class Ext(BundleExpr):
    """A filtered bundle; ``args`` lists graded pieces from sub to quotient."""

    args: tuple[BundleExpr, ...]

    def __post_init__(self) -> None:
        if len(self.args) < 2:
            raise BundleError("Ext needs at least two graded pieces")


def O(*degrees: int) -> LineO:  # noqa: E743 - mirrors the usual notation
    return LineO(tuple(degrees))


def U(factor: int, index: int | None = None) -> Taut:
    return Taut("U", factor, index)


def Q(factor: int, index: int | None = None) -> Taut:
    return Taut("Q", factor, index)


def direct_sum(items: Iterable[BundleExpr]) -> BundleExpr:
    items = tuple(items)
    if not items:
        return ZeroBundle()
    if len(items) == 1:
        return items[0]
    return DirectSum(_flatten(DirectSum, items))


# ---------------------------------------------------------------------------
# printing in the model language


def _ints(xs: Sequence[int]) -> str:
    return ",".join(str(x) for x in xs)


def _distribute(expr: BundleExpr) -> list[BundleExpr]:
    """Rewrite an expression as a list of summands that are products of atoms."""
    if isinstance(expr, DirectSum):
        out: list[BundleExpr] = []
        for a in expr.args:
            out.extend(_distribute(a))
        return out
    if isinstance(expr, Tensor):
        parts = [_distribute(a) for a in expr.args]
        return [Tensor(_flatten(Tensor, combo)) if len(combo) > 1 else combo[0] for combo in product(*parts)]
    if isinstance(expr, Twist) and isinstance(expr.arg, (DirectSum, Tensor)):
        return [Twist(s, expr.degrees) if not isinstance(s, Tensor) else Tensor(s.args[:-1] + (Twist(s.args[-1], expr.degrees),))
                for s in _distribute(expr.arg)]
    return [expr]


def to_dsl(expr: BundleExpr) -> str:
    """Canonical text of an expression, parseable by :func:`homfano.models.parse_bundle`."""
    if isinstance(expr, ZeroBundle):
        return "0"
    if isinstance(expr, DirectSum) or (isinstance(expr, Twist) and isinstance(expr.arg, (DirectSum, Tensor))):
        return " + ".join(_prod_dsl(s) for s in _distribute(expr))
    return _prod_dsl(expr)


def _prod_dsl(expr: BundleExpr) -> str:
    if isinstance(expr, Tensor):
        if any(isinstance(a, DirectSum) for a in expr.args):
            return to_dsl(direct_sum(_distribute(expr)))
        return "*".join(_atom_dsl(a) for a in expr.args)
    return _atom_dsl(expr)


def _atom_dsl(expr: BundleExpr) -> str:
    if isinstance(expr, LineO):
        return f"O({_ints(expr.degrees)})"
    if isinstance(expr, Taut):
        return f"{expr.kind}{expr.factor}" + (f".{expr.index}" if expr.index is not None else "")
    if isinstance(expr, Dual):
        return f"dual({to_dsl(expr.arg)})"
    if isinstance(expr, Twist):
        inner = expr.arg
        if isinstance(inner, (DirectSum, Tensor, ZeroBundle)):
            raise BundleError("twist of a compound expression has no atomic form")
        return f"{_atom_dsl(inner)}({_ints(expr.degrees)})"
    if isinstance(expr, Wedge):
        return f"Wedge{expr.k}({to_dsl(expr.arg)})"
    if isinstance(expr, Sym):
        return f"Sym{expr.k}({to_dsl(expr.arg)})"
    if isinstance(expr, Schur):
        return f"Schur[{_ints(expr.lam)}]({to_dsl(expr.arg)})"
    if isinstance(expr, Ext):
        return "Ext[" + ", ".join(to_dsl(a) for a in expr.args) + "]"
    if isinstance(expr, (DirectSum, Tensor)):
        raise BundleError("compound expression in atomic position")
    raise BundleError(f"unknown node {expr!r}")


# ---------------------------------------------------------------------------
# completely reducible algebra on labels


def _rep_add(acc: Rep, other: Rep, mult: int = 1) -> None:
    for k, v in other.items():
        acc[k] = acc.get(k, 0) + mult * v


@lru_cache(maxsize=500_000)
def label_tensor(space: Space, a: Label, b: Label) -> tuple[tuple[Label, int], ...]:
    """Decompose the tensor product of two irreducibles, block by block."""
    per_block: list[tuple[tuple[tuple[int, ...], int], ...]] = []
    shapes: list[tuple[int, int]] = []  # (factor index, number of blocks)
    for fi, (f, va, vb) in enumerate(zip(space.factors, a, b)):
        ba, bb = label_blocks(f, va), label_blocks(f, vb)
        for x, y in zip(ba, bb):
            per_block.append(gl_tensor(x, y))
        shapes.append((fi, len(ba)))
    out: Counter = Counter()
    for combo in product(*per_block):
        mult = 1
        vec: list[int] = []
        for blk, c in combo:
            mult *= c
            vec.extend(blk)
        pos = 0
        lab = []
        for f in space.factors:
            lab.append(tuple(vec[pos:pos + f.n]))
            pos += f.n
        out[canonical_label(lab)] += mult
    return tuple(out.items())


def rep_tensor(space: Space, a: Rep, b: Rep) -> Rep:
    out: Rep = {}
    if not a or not b:
        return out
    for la, ma in a.items():
        for lb, mb in b.items():
            for lab, c in label_tensor(space, la, lb):
                out[lab] = out.get(lab, 0) + ma * mb * c
    return out


def rep_dual(space: Space, a: Rep) -> Rep:
    return {dual_label(space, k): v for k, v in a.items()}


def rep_twist(a: Rep, line: Label) -> Rep:
    return {add_labels(k, line): v for k, v in a.items()}


def rep_rank(space: Space, a: Rep) -> int:
    return sum(v * label_rank(space, k) for k, v in a.items())


def _label_weights(space: Space, label: Label) -> list[tuple[int, ...]]:
    blocks = []
    for f, vec in zip(space.factors, label):
        blocks.extend(label_blocks(f, vec))
    out: list[tuple[int, ...]] = []
    for w, c in block_weight_multiset(blocks).items():
        out.extend([w] * c)
    return out


def _space_block_sizes(space: Space) -> list[int]:
    sizes: list[int] = []
    for f in space.factors:
        sizes.extend(f.block_sizes)
    return sizes


def _join_blocks(space: Space, blocks: Sequence[tuple[int, ...]]) -> Label:
    lab, pos = [], 0
    for f in space.factors:
        nb = len(f.block_sizes)
        vec: list[int] = []
        for blk in blocks[pos:pos + nb]:
            vec.extend(blk)
        lab.append(tuple(vec))
        pos += nb
    return canonical_label(lab)


@lru_cache(maxsize=100_000)
def label_plethysm(space: Space, lam: Partition, label: Label) -> tuple[tuple[Label, int], ...]:
    """Decompose S_lam(V) for the irreducible V with the given label."""
    lam = as_partition(lam)
    if not lam:
        return ((space.trivial_label(), 1),)
    rank = label_rank(space, label)
    if len(lam) > rank:
        return ()
    if rank == 1:
        if len(lam) > 1:
            return ()
        k = lam[0]
        return ((canonical_label(tuple(k * x for x in vec) for vec in label), 1),)
    weights = _label_weights(space, label)
    char = schur_of_weights(lam, weights)
    dec = decompose_character(char, _space_block_sizes(space))
    return tuple((_join_blocks(space, blocks), c) for blocks, c in dec.items())


@lru_cache(maxsize=4096)
def _skew_pairs(lam: Partition) -> tuple[tuple[Partition, Partition, int], ...]:
    """All (mu, nu, c) with c = c^lam_{mu nu} > 0."""
    subs = _sub_partitions(lam)
    out = []
    for mu in subs:
        for nu in subs:
            if sum(mu) + sum(nu) != sum(lam):
                continue
            c = lr_multiply(mu, nu).get(lam, 0)
            if c:
                out.append((mu, nu, c))
    return tuple(out)


@lru_cache(maxsize=4096)
def _sub_partitions(lam: Partition) -> tuple[Partition, ...]:
    out = []
    ranges = [range(x + 1) for x in lam]
    for combo in product(*ranges):
        if all(a >= b for a, b in zip(combo, combo[1:])):
            out.append(as_partition(combo))
    return tuple(out)


def rep_schur(space: Space, lam: Partition, rep: Rep) -> Rep:
    """S_lam of a completely reducible bundle."""
    lam = as_partition(lam)
    summands: list[Label] = []
    for lab, m in sorted(rep.items()):
        summands.extend([lab] * m)
    memo: dict[tuple[Partition, int], Rep] = {}

    def rec(mu: Partition, idx: int) -> Rep:
        key = (mu, idx)
        if key in memo:
            return memo[key]
        if not mu:
            res: Rep = {space.trivial_label(): 1}
        elif idx == len(summands):
            res = {}
        elif idx == len(summands) - 1:
            res = dict(label_plethysm(space, mu, summands[idx]))
        else:
            res = {}
            for a, b, c in _skew_pairs(mu):
                left = dict(label_plethysm(space, a, summands[idx]))
                if not left:
                    continue
                right = rec(b, idx + 1)
                if not right:
                    continue
                _rep_add(res, rep_tensor(space, left, right), c)
        memo[key] = res
        return res

    return {k: v for k, v in rec(lam, 0).items() if v}


# ---------------------------------------------------------------------------
# filtered bundles


@dataclass(frozen=True)
class DecomposedBundle:
    """Associated graded of a filtered homogeneous bundle, sub to quotient."""

    space: Space
    blocks: tuple[tuple[tuple[Label, int], ...], ...]

    @classmethod
    def from_reps(cls, space: Space, reps: Iterable[Rep]) -> "DecomposedBundle":
        blocks = tuple(tuple(sorted((k, v) for k, v in r.items() if v)) for r in reps)
        return cls(space, tuple(b for b in blocks if b))

    @property
    def graded(self) -> list[Rep]:
        return [dict(b) for b in self.blocks]

    def total(self) -> Rep:
        out: Rep = {}
        for b in self.blocks:
            for k, v in b:
                out[k] = out.get(k, 0) + v
        return out

    @property
    def rank(self) -> int:
        return sum(rep_rank(self.space, dict(b)) for b in self.blocks)

    @property
    def completely_reducible(self) -> bool:
        return len(self.blocks) <= 1

    def labels(self) -> list[tuple[Label, int]]:
        return sorted(self.total().items())

    def dual(self) -> "DecomposedBundle":
        return DecomposedBundle.from_reps(self.space, [rep_dual(self.space, r) for r in reversed(self.graded)])

    def twist(self, degrees: Sequence[int]) -> "DecomposedBundle":
        line = self.space.line_label(degrees)
        return DecomposedBundle.from_reps(self.space, [rep_twist(r, line) for r in self.graded])

    def direct_sum(self, other: "DecomposedBundle") -> "DecomposedBundle":
        return DecomposedBundle.from_reps(self.space, _fb_sum(self.graded, other.graded))

    def tensor(self, other: "DecomposedBundle") -> "DecomposedBundle":
        return DecomposedBundle.from_reps(self.space, _fb_tensor(self.space, self.graded, other.graded))

    def schur(self, lam: Iterable[int]) -> "DecomposedBundle":
        return DecomposedBundle.from_reps(self.space, _fb_schur(self.space, as_partition(lam), self.graded))

    def wedge(self, k: int) -> "DecomposedBundle":
        if k < 0:
            raise BundleError("negative exterior power")
        return self.schur((1,) * k)

    def sym(self, k: int) -> "DecomposedBundle":
        if k < 0:
            raise BundleError("negative symmetric power")
        return self.schur((k,) if k else ())

    def first_chern(self) -> tuple[int, ...]:
        return first_chern_of_rep(self.space, self.total())

    def split(self) -> "DecomposedBundle":
        """Forget the filtration: one block holding every graded piece."""
        return DecomposedBundle.from_reps(self.space, [self.total()])

    def describe(self) -> str:
        parts = []
        for blk in self.blocks:
            parts.append(" + ".join(f"{m}*{list(lab)}" if m > 1 else str(list(lab)) for lab, m in blk))
        return " | ".join(parts) if parts else "0"


def _fb_sum(a: list[Rep], b: list[Rep]) -> list[Rep]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        r: Rep = {}
        if i < len(a):
            _rep_add(r, a[i])
        if i < len(b):
            _rep_add(r, b[i])
        out.append(r)
    return out


def _fb_tensor(space: Space, a: list[Rep], b: list[Rep]) -> list[Rep]:
    if not a or not b:
        return []
    out: list[Rep] = [dict() for _ in range(len(a) + len(b) - 1)]
    for i, ra in enumerate(a):
        for j, rb in enumerate(b):
            _rep_add(out[i + j], rep_tensor(space, ra, rb))
    return out


def _fb_schur(space: Space, lam: Partition, blocks: list[Rep]) -> list[Rep]:
    # filtration degree of S_mu(A_i) is i * |mu|; pieces of equal degree form
    # a single block, which is a direct sum
    memo: dict[tuple[Partition, int], dict[int, Rep]] = {}

    def rec(mu: Partition, i: int) -> dict[int, Rep]:
        key = (mu, i)
        if key in memo:
            return memo[key]
        if not mu:
            res: dict[int, Rep] = {0: {space.trivial_label(): 1}}
        elif i == len(blocks):
            res = {}
        elif i == len(blocks) - 1:
            r = rep_schur(space, mu, blocks[i])
            res = {i * sum(mu): r} if r else {}
        else:
            res = {}
            for a, b, c in _skew_pairs(mu):
                left = rep_schur(space, a, blocks[i]) if a else {space.trivial_label(): 1}
                if not left:
                    continue
                for deg, right in rec(b, i + 1).items():
                    prod_rep = rep_tensor(space, left, right)
                    if prod_rep:
                        tgt = res.setdefault(deg + i * sum(a), {})
                        _rep_add(tgt, prod_rep, c)
        memo[key] = res
        return res

    graded = rec(lam, 0)
    return [graded[d] for d in sorted(graded) if graded[d]]


def first_chern_of_rep(space: Space, rep: Rep) -> tuple[int, ...]:
    total = [0] * space.picard_rank
    for lab, m in rep.items():
        full = label_rank(space, lab)
        det = []
        for f, vec in zip(space.factors, lab):
            v: list[int] = []
            for blk in label_blocks(f, vec):
                # the weights of the module sum to full * |blk| / size on this block
                share = sum(blk) * full // len(blk)
                v.extend([share] * len(blk))
            det.append(tuple(v))
        for i, d in enumerate(line_degrees(space, canonical_label(det))):
            total[i] += m * d
    return tuple(total)


# ---------------------------------------------------------------------------
# normalisation


def _block_std(f, block: int, dual: bool = False) -> tuple[int, ...]:
    sizes = f.block_sizes
    vec = [0] * f.n
    start = sum(sizes[:block])
    if dual:
        vec[start + sizes[block] - 1] = -1
    else:
        vec[start] = 1
    return tuple(vec)


def _factor_label(space: Space, fi: int, vec: tuple[int, ...]) -> Label:
    lab = [tuple([0] * f.n) for f in space.factors]
    lab[fi] = vec
    return canonical_label(lab)


def _taut_blocks(space: Space, atom: Taut) -> list[Rep]:
    fi = atom.factor - 1
    if not 0 <= fi < len(space.factors):
        raise BundleError(f"{atom.kind}{atom.factor}: no factor number {atom.factor}")
    f = space.factors[fi]
    if f.weighted:
        raise BundleError(f"{atom.kind}{atom.factor}: weighted factors carry no tautological bundles")
    r = len(f.subspace_dims)
    idx = atom.index
    if idx is None:
        if r != 1:
            raise BundleError(f"{atom.kind}{atom.factor} needs an index on {f}")
        idx = 1
    if not 1 <= idx <= r:
        raise BundleError(f"{atom.kind}{atom.factor}.{idx}: index out of range for {f}")
    nblocks = len(f.block_sizes)
    # block j (0-based) is U_{r-j}/U_{r-j-1} for j >= 1, and V/U_r for j = 0
    if atom.kind == "U":
        # U_idx has graded pieces U_1, U_2/U_1, ..., U_idx/U_{idx-1} (sub first)
        blocks = list(range(nblocks - 1, nblocks - 1 - idx, -1))
    elif atom.kind == "Q":
        # V/U_idx has pieces U_{idx+1}/U_idx, ..., V/U_r (sub first)
        blocks = list(range(nblocks - 1 - idx, -1, -1))
    else:
        raise BundleError(f"unknown tautological bundle {atom.kind}")
    return [{_factor_label(space, fi, _block_std(f, b)): 1} for b in blocks]


def _check_degrees(space: Space, degrees: Sequence[int]) -> None:
    if len(degrees) != space.picard_rank:
        raise BundleError(
            f"twist vector of length {len(degrees)} does not match Picard rank {space.picard_rank} of {space}"
        )


@lru_cache(maxsize=50_000)
def normalize(expr: BundleExpr, space: Space) -> DecomposedBundle:
    """Normal form of ``expr`` on ``space``."""
    space.require_unweighted()
    return DecomposedBundle.from_reps(space, _norm(expr, space))


def _norm(expr: BundleExpr, space: Space) -> list[Rep]:
    if isinstance(expr, ZeroBundle):
        return []
    if isinstance(expr, LineO):
        _check_degrees(space, expr.degrees)
        return [{space.line_label(expr.degrees): 1}]
    if isinstance(expr, Taut):
        return _taut_blocks(space, expr)
    if isinstance(expr, Dual):
        return normalize(expr.arg, space).dual().graded
    if isinstance(expr, Twist):
        _check_degrees(space, expr.degrees)
        return normalize(expr.arg, space).twist(expr.degrees).graded
    if isinstance(expr, Tensor):
        acc = normalize(expr.args[0], space)
        for a in expr.args[1:]:
            acc = acc.tensor(normalize(a, space))
        return acc.graded
    if isinstance(expr, DirectSum):
        acc = normalize(expr.args[0], space)
        for a in expr.args[1:]:
            acc = acc.direct_sum(normalize(a, space))
        return acc.graded
    if isinstance(expr, (Wedge, Sym, Schur)):
        inner = normalize(expr.arg, space)
        if isinstance(expr, Wedge):
            lam = (1,) * expr.k
        elif isinstance(expr, Sym):
            lam = (expr.k,) if expr.k else ()
        else:
            lam = as_partition(expr.lam)
            if len(lam) > inner.rank:
                raise BundleError(f"Schur{list(lam)} has more rows than the rank {inner.rank} of its argument")
        if isinstance(expr, (Wedge, Sym)) and expr.k < 0:
            raise BundleError("negative power")
        return inner.schur(lam).graded
    if isinstance(expr, Ext):
        out: list[Rep] = []
        for a in expr.args:
            out.extend(normalize(a, space).graded)
        return out
    raise BundleError(f"cannot normalise {expr!r}")


def rank(expr: BundleExpr, space: Space) -> int:
    return normalize(expr, space).rank


def structural_rank(expr: BundleExpr, space: Space) -> int:
    """Rank from the expression tree alone (used to cross-check ``rank``)."""
    from math import comb

    if isinstance(expr, ZeroBundle):
        return 0
    if isinstance(expr, LineO):
        return 1
    if isinstance(expr, Taut):
        f = space.factors[expr.factor - 1]
        k = f.subspace_dims[(expr.index or 1) - 1]
        return k if expr.kind == "U" else f.n - k
    if isinstance(expr, (Dual, Twist)):
        return structural_rank(expr.arg, space)
    if isinstance(expr, Tensor):
        r = 1
        for a in expr.args:
            r *= structural_rank(a, space)
        return r
    if isinstance(expr, (DirectSum, Ext)):
        return sum(structural_rank(a, space) for a in expr.args)
    if isinstance(expr, Wedge):
        return comb(structural_rank(expr.arg, space), expr.k)
    if isinstance(expr, Sym):
        r = structural_rank(expr.arg, space)
        return comb(r + expr.k - 1, expr.k) if r else int(expr.k == 0)
    if isinstance(expr, Schur):
        r = structural_rank(expr.arg, space)
        lam = as_partition(expr.lam)
        return weyl_dim(lam + (0,) * (r - len(lam)), r) if len(lam) <= r else 0
    raise BundleError(f"unknown node {expr!r}")


def first_chern(expr: BundleExpr, space: Space) -> tuple[int, ...]:
    return normalize(expr, space).first_chern()


# ---------------------------------------------------------------------------
# tangent and cotangent bundles


@lru_cache(maxsize=1024)
def tangent(space: Space) -> DecomposedBundle:
    """T_X, filtered by the distance between Levi blocks (distance one is the sub)."""
    space.require_unweighted()
    by_distance: dict[int, Rep] = {}
    for fi, f in enumerate(space.factors):
        nb = len(f.block_sizes)
        for a in range(nb):
            for b in range(a + 1, nb):
                vec = tuple(x + y for x, y in zip(_block_std(f, a), _block_std(f, b, dual=True)))
                lab = _factor_label(space, fi, vec)
                rep = by_distance.setdefault(b - a, {})
                rep[lab] = rep.get(lab, 0) + 1
    return DecomposedBundle.from_reps(space, [by_distance[d] for d in sorted(by_distance)])


def cotangent(space: Space) -> DecomposedBundle:
    return tangent(space).dual()


def is_grassmannian_only(space: Space) -> bool:
    return all(isinstance(f, Grassmannian) for f in space.factors)


def is_flag(f) -> bool:
    return isinstance(f, Flag)


__all__ = [
    "BundleError",
    "BundleExpr",
    "DecomposedBundle",
    "DirectSum",
    "Dual",
    "Ext",
    "LabelError",
    "LineO",
    "O",
    "Q",
    "Schur",
    "Sym",
    "Taut",
    "Tensor",
    "Twist",
    "U",
    "Wedge",
    "ZeroBundle",
    "cotangent",
    "direct_sum",
    "first_chern",
    "normalize",
    "rank",
    "structural_rank",
    "tangent",
    "to_dsl",
]
