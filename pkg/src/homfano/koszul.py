"""Cohomology on zero loci through Koszul complexes and interval propagation.

Every sheaf that appears (Koszul terms on X, their kernels, restrictions to Y,
Hodge sheaves of Y) is a node of an :class:`IntervalNetwork`.  Nodes carry an
interval for each h^q and an exact Euler characteristic.  Short exact
sequences are encoded through their long exact cohomology sequence: every
group is the sum of the ranks of the map coming in and the map going out, and
those ranks are interval variables too.  Propagation runs until nothing moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .bundlecalc import BundleExpr, DecomposedBundle, Rep, cotangent, label_tensor, normalize, tangent
from .bwb import CohomologyProfile, Space, bott
from .chow import CodimensionError
from .combinat import weyl_dim

INF = math.inf


class InconsistentIntervals(ArithmeticError):
    """Propagation produced an empty interval: the inputs contradict each other."""


class PropagationCapReached(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# interval network


@dataclass
class _Node:
    name: str
    lb: list[int]
    ub: list[float]
    euler: int


@dataclass
class _Ses:
    a: int
    b: int
    c: int
    rlb: list[int]
    rub: list[float]


@dataclass
class _Tie:
    left: tuple[int, int]
    right: tuple[int, int]
    tag: str


class IntervalNetwork:
    """Cohomology intervals linked by short exact sequences."""

    def __init__(self, top: int) -> None:
        self.top = top
        self.nodes: list[_Node] = []
        self.seqs: list[_Ses] = []
        self.ties: list[_Tie] = []
        self.used: set[str] = set()
        self.sweeps = 0

    # -- construction -----------------------------------------------------

    def add_exact(self, name: str, profile: CohomologyProfile) -> int:
        lb = [profile.interval(q)[0] for q in range(self.top + 1)]
        ub: list[float] = [profile.interval(q)[1] for q in range(self.top + 1)]
        self.nodes.append(_Node(name, lb, ub, profile.euler))
        return len(self.nodes) - 1

    def add_unknown(self, name: str, euler: int, vanish_above: int | None = None) -> int:
        ub: list[float] = [INF] * (self.top + 1)
        if vanish_above is not None:
            for q in range(vanish_above + 1, self.top + 1):
                ub[q] = 0
        self.nodes.append(_Node(name, [0] * (self.top + 1), ub, euler))
        return len(self.nodes) - 1

    def add_bounded(self, name: str, lb: list[int], ub: list[int], euler: int) -> int:
        self.nodes.append(_Node(name, list(lb), list(ub), euler))
        return len(self.nodes) - 1

    def add_ses(self, a: int, b: int, c: int) -> None:
        """Record 0 -> a -> b -> c -> 0."""
        ea, eb, ec = (self.nodes[i].euler for i in (a, b, c))
        if eb != ea + ec:
            raise InconsistentIntervals(f"Euler characteristics {ea} + {ec} != {eb}")
        npos = 3 * (self.top + 1)
        self.seqs.append(_Ses(a, b, c, [0] * (npos - 1), [INF] * (npos - 1)))

    def tie(self, left: tuple[int, int], right: tuple[int, int], tag: str) -> None:
        """Impose h^{q1}(n1) = h^{q2}(n2); ``tag`` names the constraint for reporting."""
        self.ties.append(_Tie(left, right, tag))

    def force_zero(self, node: int, q: int, tag: str) -> None:
        n = self.nodes[node]
        if n.lb[q] > 0:
            raise InconsistentIntervals(f"{tag}: h^{q}({n.name}) is at least {n.lb[q]}")
        if n.ub[q] != 0:
            n.ub[q] = 0
            self.used.add(tag)

    # -- propagation ------------------------------------------------------

    def _set(self, node: _Node, q: int, lo: float, hi: float) -> bool:
        changed = False
        if lo > node.lb[q]:
            node.lb[q] = int(lo)
            changed = True
        if hi < node.ub[q]:
            node.ub[q] = int(hi)
            changed = True
        if node.lb[q] > node.ub[q]:
            raise InconsistentIntervals(f"h^{q}({node.name}) has empty interval [{node.lb[q]},{node.ub[q]}]")
        return changed

    def _euler_pass(self, node: _Node) -> bool:
        changed = False
        N = self.top + 1
        for q in range(N):
            s = node.euler if q % 2 == 0 else -node.euler
            lo: float = s
            hi: float = s
            for p in range(N):
                if p == q:
                    continue
                if (p - q) % 2 == 0:
                    lo -= node.ub[p]
                    hi -= node.lb[p]
                else:
                    lo += node.lb[p]
                    hi += node.ub[p]
            changed |= self._set(node, q, max(lo, 0), hi)
        return changed

    def _ses_pass(self, seq: _Ses) -> bool:
        changed = False
        trio = (self.nodes[seq.a], self.nodes[seq.b], self.nodes[seq.c])
        npos = 3 * (self.top + 1)
        for k in range(npos):
            node, q = trio[k % 3], k // 3
            in_lb, in_ub = (seq.rlb[k - 1], seq.rub[k - 1]) if k > 0 else (0, 0)
            out_lb, out_ub = (seq.rlb[k], seq.rub[k]) if k < npos - 1 else (0, 0)
            changed |= self._set(node, q, in_lb + out_lb, in_ub + out_ub)
            if k > 0:
                lo = max(in_lb, node.lb[q] - out_ub)
                hi = min(in_ub, node.ub[q] - out_lb)
                if lo > seq.rlb[k - 1] or hi < seq.rub[k - 1]:
                    seq.rlb[k - 1], seq.rub[k - 1] = int(lo), hi
                    changed = True
                in_lb, in_ub = seq.rlb[k - 1], seq.rub[k - 1]
            if k < npos - 1:
                lo = max(out_lb, node.lb[q] - in_ub)
                hi = min(out_ub, node.ub[q] - in_lb)
                if lo > seq.rlb[k] or hi < seq.rub[k]:
                    seq.rlb[k], seq.rub[k] = int(lo), hi
                    changed = True
            if (k > 0 and seq.rlb[k - 1] > seq.rub[k - 1]) or (k < npos - 1 and seq.rlb[k] > seq.rub[k]):
                raise InconsistentIntervals(f"exact sequence through {node.name} is contradictory")
        return changed

    def _tie_pass(self, tie: _Tie) -> bool:
        (n1, q1), (n2, q2) = tie.left, tie.right
        a, b = self.nodes[n1], self.nodes[n2]
        lo = max(a.lb[q1], b.lb[q2])
        hi = min(a.ub[q1], b.ub[q2])
        changed = self._set(a, q1, lo, hi)
        changed |= self._set(b, q2, lo, hi)
        if changed:
            self.used.add(tie.tag)
        return changed

    def propagate(self) -> None:
        cap = 10 * (len(self.seqs) + len(self.ties) + len(self.nodes)) + 10
        for sweep in range(cap):
            self.sweeps = sweep + 1
            changed = False
            for seq in self.seqs:
                changed |= self._ses_pass(seq)
            for tie in self.ties:
                changed |= self._tie_pass(tie)
            for node in self.nodes:
                changed |= self._euler_pass(node)
            if not changed:
                return
        raise PropagationCapReached(f"no fixpoint after {cap} sweeps")

    def profile(self, node: int) -> CohomologyProfile:
        n = self.nodes[node]
        ub = tuple(int(x) if x != INF else -1 for x in n.ub)
        if -1 in ub:
            raise InconsistentIntervals(f"h^*({n.name}) has no finite upper bound")
        return CohomologyProfile(tuple(n.lb), ub, n.euler)


# ---------------------------------------------------------------------------
# problems


@dataclass(frozen=True)
class FanoConstraints:
    vanishing: bool = True  # h^{0,q} = 0 for q > 0
    hodge_symmetry: bool = True
    serre_duality: bool = True

    @classmethod
    def none(cls) -> "FanoConstraints":
        return cls(False, False, False)


@dataclass(frozen=True)
class ZeroLocusProblem:
    """The zero locus Y of a general section of F on the ambient space X."""

    space: Space
    F: BundleExpr | DecomposedBundle
    constraints: FanoConstraints = field(default_factory=FanoConstraints)
    formal: bool = False  # sections are restricted, so Koszul exactness is assumed

    def __post_init__(self) -> None:
        self.space.require_unweighted()
        if self.dim < 1:
            raise CodimensionError(f"bundle of rank {self.rank} on a {self.space.dim}-dimensional space")

    @cached_property
    def bundle(self) -> DecomposedBundle:
        return self.F if isinstance(self.F, DecomposedBundle) else normalize(self.F, self.space)

    @property
    def rank(self) -> int:
        return self.bundle.rank

    @property
    def dim(self) -> int:
        return self.space.dim - self.rank

    def check_dim(self, d: int | None) -> None:
        if d is not None and d != self.dim:
            raise CodimensionError(f"zero locus has dimension {self.dim}, not {d}")


def isotypic_profiles(space: Space, rep: Rep) -> dict[tuple, list[int]]:
    """Multiplicity of each irreducible module in each cohomology degree.

    Modules are keyed by their highest weights modulo determinant twists:
    the pieces of a filtration carry independent linearizations, so only the
    action of the special linear groups is common to all of them.
    """
    out: dict[tuple, list[int]] = {}
    for lab, m in rep.items():
        res = bott(space, lab)
        if res.degree is None:
            continue
        key = tuple(tuple(x - hw[-1] for x in hw) for hw in res.gl_labels)
        vec = out.setdefault(key, [0] * (space.dim + 1))
        vec[res.degree] += m
    return out


def filtered_profile(space: Space, graded: list[Rep]) -> CohomologyProfile:
    """Cohomology bounds for a homogeneous bundle with the given associated graded.

    The maps in the long exact sequences of the filtration are equivariant, so
    the sequences split into isotypic components and each one is bounded on
    its own.
    """
    top = space.dim
    pieces = [isotypic_profiles(space, r) for r in graded]
    lb, ub = [0] * (top + 1), [0] * (top + 1)
    euler = 0
    for key in sorted({k for p in pieces for k in p}):
        size = 1
        for hw in key:
            size *= weyl_dim(hw)
        mults = [p.get(key, [0] * (top + 1)) for p in pieces]
        present = [m for m in mults if any(m)]
        if len(present) == 1:
            lo = hi = present[0]
        else:
            net = IntervalNetwork(top)
            nodes = [net.add_exact(f"piece{i}", CohomologyProfile.exact(m)) for i, m in enumerate(mults)]
            acc = nodes[0]
            for i in range(1, len(nodes)):
                e = net.nodes[acc].euler + net.nodes[nodes[i]].euler
                nxt = net.add_unknown(f"F{i}", e)
                net.add_ses(acc, nxt, nodes[i])
                acc = nxt
            net.propagate()
            prof = net.profile(acc)
            lo, hi = list(prof.lb), list(prof.ub)
        for q in range(top + 1):
            lb[q] += size * lo[q]
            ub[q] += size * hi[q]
            euler += (-1) ** q * size * sum(m[q] for m in mults)
    return CohomologyProfile(tuple(lb), tuple(ub), euler)


def ambient_profile(space: Space, rep: Rep) -> CohomologyProfile:
    total = CohomologyProfile.zero(space.dim)
    for lab, m in rep.items():
        total = total + bott(space, lab).profile.scale(m)
    return total


@dataclass
class RestrictedCohomology:
    profile: CohomologyProfile
    ambient: list[CohomologyProfile]  # h^*(X, wedge^p F^dual (x) G), possibly intervals for filtered terms
    formal: bool = False


class _Builder:
    """Assembles one network for a problem; nodes are shared between queries."""

    def __init__(self, problem: ZeroLocusProblem) -> None:
        self.problem = problem
        self.space = problem.space
        self.net = IntervalNetwork(self.space.dim)
        self.fdual = problem.bundle.dual()
        self._wedges: dict[int, DecomposedBundle] = {}
        self._ambient: dict[DecomposedBundle, int] = {}
        self._restricted: dict[DecomposedBundle, tuple[int, list[int]]] = {}

    def wedge_fdual(self, p: int) -> DecomposedBundle:
        if p not in self._wedges:
            self._wedges[p] = self.fdual.wedge(p)
        return self._wedges[p]

    def ambient(self, bundle: DecomposedBundle, name: str) -> int:
        """Node for h^*(X, bundle); filtered bundles are bounded isotypic component by component."""
        if bundle in self._ambient:
            return self._ambient[bundle]
        net = self.net
        if len(bundle.blocks) <= 1:
            rep = bundle.graded[0] if bundle.blocks else {}
            node = net.add_exact(name, ambient_profile(self.space, rep))
        else:
            prof = filtered_profile(self.space, bundle.graded)
            node = net.add_bounded(name, list(prof.lb), list(prof.ub), prof.euler)
        self._ambient[bundle] = node
        return node

    def restricted(self, G: DecomposedBundle, name: str) -> tuple[int, list[int]]:
        """Node for h^*(Y, G|Y) plus the Koszul term nodes K_0..K_r."""
        if G in self._restricted:
            return self._restricted[G]
        net = self.net
        r = self.problem.rank
        terms = [self.ambient(self.wedge_fdual(p).tensor(G), f"L{p}({name})") for p in range(r + 1)]
        if r == 0:
            node = terms[0]
        else:
            # 0 -> I_{p+1} -> K_p -> I_p -> 0, I_r = K_r, and 0 -> I_1 -> K_0 -> G|Y -> 0
            image = terms[r]
            for p in range(r - 1, 0, -1):
                euler = net.nodes[terms[p]].euler - net.nodes[image].euler
                nxt = net.add_unknown(f"I{p}({name})", euler)
                net.add_ses(image, terms[p], nxt)
                image = nxt
            euler = net.nodes[terms[0]].euler - net.nodes[image].euler
            node = net.add_unknown(f"{name}|Y", euler, vanish_above=self.problem.dim)
            net.add_ses(image, terms[0], node)
        self._restricted[G] = (node, terms)
        return node, terms

    def hodge_row(self, j: int) -> int:
        """Node for Omega^j_Y from the j-th exterior power of the conormal sequence."""
        d = self.problem.dim
        net = self.net
        omega = cotangent(self.space)
        terms = []
        for k in range(j + 1):
            G = self.fdual.sym(j - k).tensor(omega.wedge(k))
            terms.append(self.restricted(G, f"S{j - k}Fd*W{k}")[0])
        # 0 -> T_0 -> T_1 -> ... -> T_j -> Omega^j_Y -> 0
        coker = terms[0]
        for k in range(1, j + 1):
            euler = net.nodes[terms[k]].euler - net.nodes[coker].euler
            nxt = net.add_unknown(f"C{k}(row {j})", euler, vanish_above=d)
            net.add_ses(coker, terms[k], nxt)
            coker = nxt
        return coker


def restricted_cohomology(problem: ZeroLocusProblem, G: BundleExpr | DecomposedBundle) -> RestrictedCohomology:
    """Cohomology of G restricted to Y, with the ambient Koszul table."""
    builder = _Builder(problem)
    bundle = G if isinstance(G, DecomposedBundle) else normalize(G, problem.space)
    node, terms = builder.restricted(bundle, "G")
    builder.net.propagate()
    return RestrictedCohomology(
        builder.net.profile(node),
        [builder.net.profile(t) for t in terms],
        problem.formal,
    )


@dataclass
class HodgeTable:
    dim: int
    lb: tuple[tuple[int, ...], ...]  # lb[p][q] bounds h^{p,q} = h^q(Omega^p)
    ub: tuple[tuple[int, ...], ...]
    euler: tuple[int, ...]  # chi(Omega^p)
    constraints_used: tuple[str, ...] = ()
    formal: bool = False

    @property
    def exact(self) -> bool:
        return self.lb == self.ub

    def interval(self, p: int, q: int) -> tuple[int, int]:
        return self.lb[p][q], self.ub[p][q]

    def value(self, p: int, q: int) -> int:
        lo, hi = self.interval(p, q)
        if lo != hi:
            raise ValueError(f"h^{{{p},{q}}} is only known to lie in [{lo},{hi}]")
        return lo

    def pinched(self, p: int, q: int) -> bool:
        lo, hi = self.interval(p, q)
        return lo == hi

    def format(self) -> str:
        lines = []
        for p in range(self.dim + 1):
            cells = []
            for q in range(self.dim + 1):
                lo, hi = self.interval(p, q)
                cells.append(str(lo) if lo == hi else f"[{lo},{hi}]")
            lines.append(" ".join(cells))
        return "\n".join(lines)


def factor_poincare(sizes: tuple[int, ...]) -> list[int]:
    """Betti numbers b_{2p} of a partial flag variety with the given block sizes.

    This is the q-multinomial coefficient [n]_q! / prod [b_i]_q!, which counts
    Schubert cells by dimension; all cohomology is of type (p, p).
    """
    def qfact(m: int) -> list[int]:
        poly = [1]
        for i in range(1, m + 1):
            nxt = [0] * (len(poly) + i - 1)
            for a, c in enumerate(poly):
                for b in range(i):
                    nxt[a + b] += c
            poly = nxt
        return poly

    def div(num: list[int], den: list[int]) -> list[int]:
        num = list(num)
        out = [0] * (len(num) - len(den) + 1)
        for i in range(len(out)):
            c = num[i] // den[0]
            out[i] = c
            for j, x in enumerate(den):
                num[i + j] -= c * x
        if any(num):
            raise ArithmeticError("q-multinomial division left a remainder")
        return out

    poly = qfact(sum(sizes))
    for b in sizes:
        poly = div(poly, qfact(b))
    return poly


def _split_untouched(problem: ZeroLocusProblem) -> tuple[list[int], ZeroLocusProblem] | None:
    """Write Y = A x Y' when F does not involve the factors of A."""
    space, bundle = problem.space, problem.bundle
    labels = list(bundle.total())
    untouched = [i for i in range(len(space.factors)) if all(not any(lab[i]) for lab in labels)]
    if not untouched or len(untouched) == len(space.factors):
        return None
    keep = [i for i in range(len(space.factors)) if i not in untouched]
    sub = Space(tuple(space.factors[i] for i in keep))
    if sub.dim - bundle.rank < 1:
        return None
    blocks = tuple(tuple((tuple(lab[i] for i in keep), m) for lab, m in blk) for blk in bundle.blocks)
    inner = ZeroLocusProblem(sub, DecomposedBundle(sub, blocks), problem.constraints, problem.formal)
    return untouched, inner


def hodge_numbers(problem: ZeroLocusProblem) -> HodgeTable:
    split = _split_untouched(problem)
    if split is not None:
        untouched, inner = split
        betti = [1]
        for i in untouched:
            fb = factor_poincare(problem.space.factors[i].block_sizes)
            betti = [sum(betti[a] * fb[k - a] for a in range(len(betti)) if 0 <= k - a < len(fb))
                     for k in range(len(betti) + len(fb) - 1)]
        table = hodge_numbers(inner)
        d = problem.dim
        lb = [[0] * (d + 1) for _ in range(d + 1)]
        ub = [[0] * (d + 1) for _ in range(d + 1)]
        euler = [0] * (d + 1)
        for a, b in enumerate(betti):
            for p in range(table.dim + 1):
                euler[p + a] += (-1) ** a * b * table.euler[p]
                for q in range(table.dim + 1):
                    lb[p + a][q + a] += b * table.lb[p][q]
                    ub[p + a][q + a] += b * table.ub[p][q]
        return HodgeTable(d, tuple(map(tuple, lb)), tuple(map(tuple, ub)), tuple(euler),
                          tuple(sorted(set(table.constraints_used) | {"kunneth"})), problem.formal)
    d = problem.dim
    cons = problem.constraints
    builder = _Builder(problem)
    net = builder.net
    rows_computed = d // 2 if cons.serre_duality else d
    rows: dict[int, int] = {j: builder.hodge_row(j) for j in range(rows_computed + 1)}
    for j in range(rows_computed + 1, d + 1):
        # Serre duality: h^q(Omega^j) = h^{d-q}(Omega^{d-j}), same Euler characteristic up to sign
        partner = net.nodes[rows[d - j]]
        rows[j] = net.add_unknown(f"Omega^{j}_Y", (-1) ** d * partner.euler, vanish_above=d)
        for q in range(d + 1):
            net.tie((rows[j], q), (rows[d - j], d - q), "serre-duality")
    net.propagate()
    if cons.vanishing:
        for q in range(1, d + 1):
            net.force_zero(rows[0], q, "fano-vanishing")
    if cons.hodge_symmetry:
        for p in range(d + 1):
            for q in range(p + 1, d + 1):
                net.tie((rows[p], q), (rows[q], p), "hodge-symmetry")
    if cons.serre_duality:
        for p in range(rows_computed + 1):
            for q in range(d + 1):
                if d - p <= rows_computed and (d - p, d - q) != (p, q):
                    net.tie((rows[p], q), (rows[d - p], d - q), "serre-duality")
    net.propagate()
    lb = tuple(tuple(net.nodes[rows[p]].lb[: d + 1]) for p in range(d + 1))
    ub = tuple(tuple(int(x) for x in net.nodes[rows[p]].ub[: d + 1]) for p in range(d + 1))
    euler = tuple(net.nodes[rows[p]].euler for p in range(d + 1))
    return HodgeTable(d, lb, ub, euler, tuple(sorted(net.used)), problem.formal)


@dataclass
class TangentSummary:
    tx: CohomologyProfile  # T_X restricted to Y
    f: CohomologyProfile  # F restricted to Y
    ty: CohomologyProfile
    difference: int | None  # h^1(T_Y) - h^0(T_Y), when forced

    @property
    def h0_bounds(self) -> tuple[int, int]:
        return self.ty.interval(0)

    @property
    def h1_bounds(self) -> tuple[int, int]:
        return self.ty.interval(1)


def tangent_cohomology(problem: ZeroLocusProblem) -> TangentSummary:
    builder = _Builder(problem)
    net = builder.net
    tx, _ = builder.restricted(tangent(problem.space), "T_X")
    fy, _ = builder.restricted(problem.bundle, "F")
    ty = net.add_unknown("T_Y", net.nodes[tx].euler - net.nodes[fy].euler, vanish_above=problem.dim)
    net.add_ses(ty, tx, fy)
    net.propagate()
    ptx, pf = net.profile(tx), net.profile(fy)
    diff = None
    if ptx.is_exact and pf.is_exact and not any(ptx.values[1:]) and not any(pf.values[1:]):
        diff = pf.values[0] - ptx.values[0]
    return TangentSummary(ptx, pf, net.profile(ty), diff)


def anticanonical_twist(problem: ZeroLocusProblem) -> tuple[int, ...]:
    """Divisor vector of -K_Y restricted from X: c1(T_X) - c1(F)."""
    t = tangent(problem.space).first_chern()
    f = problem.bundle.first_chern()
    return tuple(a - b for a, b in zip(t, f))


def h0_anticanonical(problem: ZeroLocusProblem) -> int:
    """chi(Y, -K_Y), which is h^0 for a Fano Y by Kodaira vanishing."""
    space = problem.space
    line = space.line_label(anticanonical_twist(problem))
    total = 0
    fdual = problem.bundle.dual()
    for p in range(problem.rank + 1):
        rep = fdual.wedge(p).total()
        chi = 0
        for lab, m in rep.items():
            for lab2, c in label_tensor(space, lab, line):
                chi += m * c * bott(space, lab2).profile.euler
        total += (-1) ** p * chi
    return total


def koszul_euler(problem: ZeroLocusProblem, G: BundleExpr | DecomposedBundle) -> int:
    """chi(Y, G|Y) directly from the ambient Euler characteristics."""
    bundle = G if isinstance(G, DecomposedBundle) else normalize(G, problem.space)
    fdual = problem.bundle.dual()
    total = 0
    for p in range(problem.rank + 1):
        total += (-1) ** p * ambient_profile(problem.space, fdual.wedge(p).tensor(bundle).total()).euler
    return total
