"""Partition combinatorics for GL(m) representations.

Everything here works in exact integers.  Weights and labels are plain tuples
so they hash cheaply and can be used as dictionary keys throughout the engine.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from functools import lru_cache
from itertools import product
from math import prod

Partition = tuple[int, ...]
IntVector = tuple[int, ...]
WeightMultiset = Counter  # Counter[IntVector] with positive multiplicities


class NotACharacterError(ValueError):
    """Raised when a weight multiset does not decompose into irreducibles."""


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` as a partition and strip trailing zeros."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise ValueError(f"partition entries must be non-negative: {p}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"partition must be weakly decreasing: {p}")
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def is_dominant(vec: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(vec, vec[1:]))


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


# ---------------------------------------------------------------------------
# Littlewood-Richardson coefficients


@lru_cache(maxsize=None)
def _lr_table(lam: Partition, mu: Partition, max_rows: int | None) -> tuple[tuple[Partition, int], ...]:
    if not mu:
        return ((lam, 1),)
    out: Counter = Counter()
    m = len(mu)
    rows_cap = len(lam) + m if max_rows is None else max_rows

    # counts[r][j] = number of letters j+1 placed in row r
    def place(letter: int, shape: list[int], counts: list[list[int]]) -> None:
        if letter == m:
            out[as_partition(shape)] += 1
            return
        need = mu[letter]
        nrows = min(rows_cap, len(shape) + 1)
        shape_ext = shape + [0] * (nrows - len(shape))
        prev_counts = [c[letter - 1] if letter > 0 else 0 for c in counts] + [0] * (nrows - len(counts))

        def strip(r: int, remaining: int, added: list[int], placed_so_far: int, prev_so_far: int) -> None:
            if remaining == 0:
                new_shape = [shape_ext[i] + (added[i] if i < len(added) else 0) for i in range(nrows)]
                new_counts = [list(c) for c in counts] + [[0] * m for _ in range(nrows - len(counts))]
                for i, a in enumerate(added):
                    new_counts[i][letter] += a
                while new_shape and new_shape[-1] == 0:
                    new_shape.pop()
                    new_counts.pop()
                place(letter + 1, new_shape, new_counts)
                return
            if r >= nrows:
                return
            upper = shape_ext[r - 1] - shape_ext[r] if r > 0 else remaining
            upper = min(upper, remaining)
            # lattice word condition: letters of this kind through row r must not
            # exceed letters of the previous kind strictly above row r
            if letter > 0:
                upper = min(upper, prev_so_far - placed_so_far)
            for a in range(upper, -1, -1):
                strip(r + 1, remaining - a, added + [a], placed_so_far + a, prev_so_far + prev_counts[r])

        strip(0, need, [], 0, 0)

    place(0, list(lam), [[0] * m for _ in lam])
    return tuple(sorted(out.items()))


def lr_multiply(lam: Iterable[int], mu: Iterable[int], max_rows: int | None = None) -> dict[Partition, int]:
    """Expand ``s_lam * s_mu`` in the Schur basis.

    With ``max_rows`` set, only partitions with at most that many rows are kept,
    which is the tensor product rule for polynomial GL(max_rows) modules.
    """
    lam_p, mu_p = as_partition(lam), as_partition(mu)
    if max_rows is not None and (len(lam_p) > max_rows or len(mu_p) > max_rows):
        return {}
    # the enumeration is cheaper when the second factor is the smaller one
    if sum(mu_p) > sum(lam_p):
        lam_p, mu_p = mu_p, lam_p
    return dict(_lr_table(lam_p, mu_p, max_rows))


def lr_coefficient(nu: Iterable[int], lam: Iterable[int], mu: Iterable[int]) -> int:
    return lr_multiply(lam, mu).get(as_partition(nu), 0)


# ---------------------------------------------------------------------------
# Weight multisets and dimensions


def weyl_dim(lam: Sequence[int], m: int | None = None) -> int:
    """Dimension of the irreducible GL(m)-module with highest weight ``lam``."""
    lam = tuple(lam)
    if m is None:
        m = len(lam)
    if len(lam) < m:
        lam = lam + (0,) * (m - len(lam))
    if len(lam) != m:
        raise ValueError(f"weight {lam} has more than {m} entries")
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    num = prod(lam[i] - lam[j] + j - i for i in range(m) for j in range(i + 1, m))
    den = prod(j - i for i in range(m) for j in range(i + 1, m))
    return num // den


@lru_cache(maxsize=None)
def _gt_weights(lam: tuple[int, ...]) -> tuple[tuple[IntVector, int], ...]:
    # Gelfand-Tsetlin branching GL(m) -> GL(m-1); lam has non-negative entries
    m = len(lam)
    if m == 1:
        return (((lam[0],), 1),)
    out: Counter = Counter()
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(m - 1)]
    total = sum(lam)
    for mu in product(*ranges):
        last = total - sum(mu)
        for w, c in _gt_weights(tuple(mu)):
            out[w + (last,)] += c
    return tuple(out.items())


def weight_multiset(lam: Sequence[int], m: int | None = None) -> WeightMultiset:
    """All weights of the irreducible GL(m)-module with highest weight ``lam``."""
    lam = tuple(int(x) for x in lam)
    if m is None:
        m = len(lam)
    if len(lam) != m:
        raise ValueError(f"weight {lam} must have exactly {m} entries")
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    if m == 0:
        return Counter({(): 1})
    shift = -lam[-1]
    base = tuple(x + shift for x in lam)
    return Counter({tuple(x - shift for x in w): c for w, c in _gt_weights(base)})


def block_weight_multiset(label: Sequence[Sequence[int]]) -> WeightMultiset:
    """Weights of an outer tensor product of irreducibles, one per block.

    The result lives on the concatenated torus.
    """
    acc: Counter = Counter({(): 1})
    for blk in label:
        ws = weight_multiset(blk)
        nxt: Counter = Counter()
        for a, ca in acc.items():
            for b, cb in ws.items():
                nxt[a + b] += ca * cb
        acc = nxt
    return acc


def split_blocks(vec: Sequence[int], block_sizes: Sequence[int]) -> tuple[IntVector, ...]:
    out = []
    pos = 0
    for b in block_sizes:
        out.append(tuple(vec[pos:pos + b]))
        pos += b
    return tuple(out)


def decompose_character(w: Mapping[IntVector, int], block_sizes: Sequence[int]) -> dict[tuple[IntVector, ...], int]:
    """Expand a character of GL(b_1) x ... x GL(b_s) into irreducibles.

    The lexicographically largest weight still present is always blockwise
    dominant, so it is the highest weight of an irreducible constituent; its
    full weight multiset is removed and the process repeats.
    """
    if any(c < 0 for c in w.values()):
        raise NotACharacterError("negative multiplicity in input")
    remaining = Counter({k: v for k, v in w.items() if v})
    total = sum(block_sizes)
    result: dict[tuple[IntVector, ...], int] = {}
    while remaining:
        top = max(remaining)
        if len(top) != total:
            raise NotACharacterError(f"weight {top} does not match block sizes {tuple(block_sizes)}")
        label = split_blocks(top, block_sizes)
        if not all(is_dominant(b) for b in label):
            raise NotACharacterError(f"leading weight {top} is not dominant")
        mult = remaining[top]
        for wt, c in block_weight_multiset(label).items():
            left = remaining.get(wt, 0) - mult * c
            if left < 0:
                raise NotACharacterError(f"weight {wt} would get negative multiplicity")
            if left:
                remaining[wt] = left
            else:
                remaining.pop(wt, None)
        result[label] = result.get(label, 0) + mult
    return result


# ---------------------------------------------------------------------------
# GL tensor products with arbitrary integer labels


@lru_cache(maxsize=None)
def gl_tensor(a: IntVector, b: IntVector) -> tuple[tuple[IntVector, int], ...]:
    """Decompose V_a (x) V_b for GL(m), with a, b dominant of length m."""
    m = len(a)
    if m != len(b):
        raise ValueError("labels of different length")
    if m == 0:
        return (((), 1),)
    sa, sb = -a[-1], -b[-1]
    pa = tuple(x + sa for x in a)
    pb = tuple(x + sb for x in b)
    out = []
    for nu, c in lr_multiply(pa, pb, max_rows=m).items():
        full = nu + (0,) * (m - len(nu))
        out.append((tuple(x - sa - sb for x in full), c))
    return tuple(out)


def schur_of_weights(lam: Partition, weights: Sequence[IntVector]) -> WeightMultiset:
    """Weights of Sigma_lam(V) for a representation V with the given weight list.

    ``weights`` lists the weights of V with repetition.  The result is computed
    from the character of Sigma_lam on a vector space of dimension len(weights):
    each monomial x^e of that character becomes the weight sum e . weights.
    """
    r = len(weights)
    lam = as_partition(lam)
    if len(lam) > r:
        return Counter()
    if r == 0:
        return Counter({(): 1}) if not lam else Counter()
    dim = len(weights[0])
    full = lam + (0,) * (r - len(lam))
    out: Counter = Counter()
    for e, c in weight_multiset(full).items():
        acc = [0] * dim
        for k, ek in enumerate(e):
            if ek:
                wk = weights[k]
                for t in range(dim):
                    acc[t] += ek * wk[t]
        out[tuple(acc)] += c
    return out


def pieri_row(lam: Iterable[int], k: int) -> dict[Partition, int]:
    """Pieri rule for multiplying by a single row (k); used as an oracle."""
    lam = as_partition(lam)
    out: dict[Partition, int] = {}
    n = len(lam) + 1
    ext = list(lam) + [0]

    def rec(i: int, left: int, cur: list[int]) -> None:
        if i == n:
            if left == 0:
                out[as_partition(cur)] = 1
            return
        cap = left if i == 0 else min(left, ext[i - 1] - ext[i])
        for a in range(cap + 1):
            rec(i + 1, left - a, cur + [ext[i] + a])

    rec(0, k, [])
    return out


def pieri_column(lam: Iterable[int], k: int) -> dict[Partition, int]:
    lam = as_partition(lam)
    return {conjugate(p): c for p, c in pieri_row(conjugate(lam), k).items()}
