"""Brute-force reference implementations used only by the tests.

Each oracle takes the slow, obvious route so that it shares no code with the
library beyond plain data types.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from itertools import product
from math import comb, factorial


def gelfand_tsetlin_weights(lam: Sequence[int]) -> Counter:
    """Weights of the GL(m) irrep with highest weight ``lam`` via GT patterns."""
    m = len(lam)
    out: Counter = Counter()
    if m == 0:
        out[()] += 1
        return out

    def rows(top: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if len(top) == 1:
            yield [top]
            return
        ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
        for below in product(*ranges):
            for rest in rows(tuple(below)):
                yield [top] + rest

    for pattern in rows(tuple(lam)):
        sums = [sum(r) for r in reversed(pattern)]  # row of length 1 first
        weight = tuple(sums[i] - (sums[i - 1] if i else 0) for i in range(m))
        out[weight] += 1
    return out


def weyl_dim_bruteforce(lam: Sequence[int]) -> int:
    return sum(gelfand_tsetlin_weights(lam).values())


def multiply(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for wa, ma in a.items():
        for wb, mb in b.items():
            out[tuple(x + y for x, y in zip(wa, wb))] += ma * mb
    return out


def peel(character: Counter, m: int) -> dict[tuple[int, ...], int]:
    """Decompose a GL(m) character by repeatedly removing the top dominant weight."""
    char = Counter({w: c for w, c in character.items() if c})
    found: dict[tuple[int, ...], int] = {}
    while char:
        top = max(w for w in char if all(w[i] >= w[i + 1] for i in range(m - 1)))
        c = char[top]
        found[top] = c
        for w, mult in gelfand_tsetlin_weights(top).items():
            char[w] -= c * mult
            if char[w] == 0:
                del char[w]
        if any(v < 0 for v in char.values()):
            raise ValueError("not a character")
    return found


def lr_bruteforce(lam: Sequence[int], mu: Sequence[int], m: int) -> dict[tuple[int, ...], int]:
    """LR coefficients restricted to partitions with at most m rows."""
    pad = lambda p: tuple(p) + (0,) * (m - len(p))  # noqa: E731
    prod_char = multiply(gelfand_tsetlin_weights(pad(lam)), gelfand_tsetlin_weights(pad(mu)))
    return {tuple(x for x in nu if x): c for nu, c in peel(prod_char, m).items()}


def projective_h(n: int, d: int) -> list[int]:
    """h^q(P^n, O(d)) for q = 0..n."""
    out = [0] * (n + 1)
    if d >= 0:
        out[0] = comb(n + d, n)
    elif d <= -n - 1:
        out[n] = comb(-d - 1, n)
    return out


def grassmannian_schubert_integral(k: int, n: int, powers: int) -> int:
    """Degree of Gr(k,n) in the Plucker embedding (number of standard Young tableaux
    of the k x (n-k) rectangle), valid when powers = k(n-k)."""
    rows = [n - k] * k
    cells = sum(rows)
    if powers != cells:
        return 0
    # hook length formula
    hooks = 1
    for i in range(k):
        for j in range(n - k):
            arm = (n - k) - j - 1
            leg = k - i - 1
            hooks *= arm + leg + 1

    return factorial(cells) // hooks
