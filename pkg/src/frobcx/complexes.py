"""Order complexes of finite posets and reduced homology over a field.

Ranks of boundary matrices are computed exactly: over GF(2) with rows packed
into Python ints, over GF(p) with sparse dict rows, and over the rationals
with fraction-free integer elimination (rows kept primitive by their gcd).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .errors import InvalidInputError


def _is_prime(n) -> bool:
    if not isinstance(n, int) or n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class Field:
    """Coefficient field: GF(p) for a prime ``p``, or the rationals when ``p`` is None."""

    p: int | None = 2

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise InvalidInputError(f"field characteristic must be prime, got {self.p}")

    @classmethod
    def parse(cls, name: str) -> "Field":
        """Accepts ``gf2``, ``gf3``, ``gfP`` for any prime P, ``rational`` / ``qq``."""
        key = name.strip().lower()
        if key in ("rational", "rationals", "qq", "q"):
            return cls(None)
        if key.startswith("gf") and key[2:].isdigit():
            return cls(int(key[2:]))
        raise InvalidInputError(f"unknown field {name!r}")

    @property
    def name(self) -> str:
        return "rational" if self.p is None else f"gf{self.p}"

    def __str__(self):
        return self.name


GF2 = Field(2)
QQ = Field(None)


class BettiVector(dict):
    """Finitely supported map ``index -> count``; zero entries are dropped.

    Compares equal to a plain dict with the same nonzero entries.
    """

    def __init__(self, data=(), **kw):
        super().__init__()
        for i, v in dict(data, **kw).items():
            if v < 0:
                raise InvalidInputError(f"negative Betti number at index {i}")
            if v:
                self[int(i)] = int(v)

    def __missing__(self, key):
        return 0

    def shift(self, n: int) -> "BettiVector":
        """Re-index: entry at ``i`` moves to ``i + n``."""
        return BettiVector({i + n: v for i, v in self.items()})

    def __add__(self, other):
        out = dict(self)
        for i, v in other.items():
            out[i] = out.get(i, 0) + v
        return BettiVector(out)

    def euler(self) -> int:
        return sum((-1) ** (i % 2) * v for i, v in self.items())

    def __repr__(self):
        return "{" + ", ".join(f"{i}: {v}" for i, v in sorted(self.items())) + "}"


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex on vertices ``0..vertex_count-1``.

    ``simplices[i]`` lists the ``i``-simplices as sorted vertex tuples.
    """

    vertex_count: int
    simplices: tuple

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def is_empty(self) -> bool:
        return not self.simplices or not self.simplices[0]

    def counts(self) -> list:
        return [len(s) for s in self.simplices]

    def __len__(self):
        return sum(self.counts())


def order_complex(elements: Sequence[Any], leq: Callable[[Any, Any], bool]) -> SimplicialComplex:
    """Complex of all chains of the finite poset ``(elements, leq)``.

    Vertices are list positions.  Raises InvalidInputError if ``leq`` is not
    antisymmetric and transitive on ``elements``.
    """
    n = len(elements)
    less = [[i != j and bool(leq(elements[i], elements[j])) for j in range(n)] for i in range(n)]
    for i in range(n):
        if not leq(elements[i], elements[i]):
            raise InvalidInputError("relation is not reflexive")
        for j in range(n):
            if less[i][j] and less[j][i]:
                raise InvalidInputError("relation is not antisymmetric")
            if less[i][j]:
                for k in range(n):
                    if less[j][k] and not less[i][k]:
                        raise InvalidInputError("relation is not transitive")
    up = [[j for j in range(n) if less[i][j]] for i in range(n)]

    by_dim: list[list] = []

    def extend(chain):
        d = len(chain) - 1
        if d == len(by_dim):
            by_dim.append([])
        by_dim[d].append(tuple(sorted(chain)))
        for j in up[chain[-1]]:
            chain.append(j)
            extend(chain)
            chain.pop()

    for v in range(n):
        extend([v])
    return SimplicialComplex(n, tuple(sorted(level) for level in by_dim))


def euler_characteristic(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic; -1 for the empty complex."""
    return sum((-1) ** i * c for i, c in enumerate(K.counts())) - 1


def boundary_columns(K: SimplicialComplex, dim: int) -> list:
    """Columns of the boundary map from ``dim``- to ``(dim-1)``-simplices.

    Each column is a dict ``row index -> +-1``.
    """
    if dim <= 0 or dim > K.dimension:
        return []
    index = {s: r for r, s in enumerate(K.simplices[dim - 1])}
    cols = []
    for s in K.simplices[dim]:
        col = {}
        for pos in range(len(s)):
            col[index[s[:pos] + s[pos + 1:]]] = -1 if pos % 2 else 1
        cols.append(col)
    return cols


def rank(columns: list, field: Field = GF2) -> int:
    """Exact rank of the matrix whose columns are sparse dicts."""
    if field.p == 2:
        return _rank_gf2(columns)
    if field.p is None:
        return _rank_rational(columns)
    return _rank_modp(columns, field.p)


def _rank_gf2(columns):
    pivots: dict[int, int] = {}
    r = 0
    for col in columns:
        v = 0
        for row, c in col.items():
            if c % 2:
                v |= 1 << row
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def _rank_modp(columns, p):
    pivots: dict[int, dict] = {}
    r = 0
    for col in columns:
        v = {row: c % p for row, c in col.items() if c % p}
        while v:
            top = max(v)
            piv = pivots.get(top)
            if piv is None:
                inv = pow(v[top], -1, p)
                pivots[top] = {row: c * inv % p for row, c in v.items()}
                r += 1
                break
            f = v[top]
            for row, c in piv.items():
                x = (v.get(row, 0) - f * c) % p
                if x:
                    v[row] = x
                else:
                    v.pop(row, None)
    return r


def _rank_rational(columns):
    # pivot rows are primitive integer vectors; eliminate fraction-free
    pivots: dict[int, dict] = {}
    r = 0
    for col in columns:
        v = {row: c for row, c in col.items() if c}
        while v:
            top = max(v)
            piv = pivots.get(top)
            if piv is None:
                g = 0
                for c in v.values():
                    g = math.gcd(g, c)
                pivots[top] = {row: c // g for row, c in v.items()}
                r += 1
                break
            a, b = piv[top], v[top]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {row: a * c for row, c in v.items()}
            for row, c in piv.items():
                x = new.get(row, 0) - b * c
                if x:
                    new[row] = x
                else:
                    new.pop(row, None)
            g = 0
            for c in new.values():
                g = math.gcd(g, c)
            v = {row: c // g for row, c in new.items()} if g > 1 else new
    return r


def boundary_ranks(K: SimplicialComplex, field: Field = GF2) -> list:
    """``ranks[i]`` = rank of the augmented boundary map out of ``i``-chains.

    ``ranks[0]`` is the augmentation (1 for a nonempty complex).
    """
    if K.is_empty():
        return []
    return [1] + [rank(boundary_columns(K, i), field) for i in range(1, K.dimension + 1)]


def reduced_betti(K: SimplicialComplex, field: Field = GF2) -> BettiVector:
    """Reduced Betti numbers of ``K``; the empty complex gives ``{-1: 1}``."""
    if K.is_empty():
        return BettiVector({-1: 1})
    counts = K.counts()
    ranks = boundary_ranks(K, field) + [0]
    return BettiVector({i: counts[i] - ranks[i] - ranks[i + 1] for i in range(len(counts))})


def poset_core(elements: Sequence[Any], leq: Callable[[Any, Any], bool]) -> list:
    """Remove beat points until none are left; returns the surviving elements.

    A beat point has exactly one upper cover or exactly one lower cover.
    Deleting one does not change the homotopy type of the order complex, so
    reduced Betti numbers over every field are preserved.
    """
    n = len(elements)
    up = [0] * n
    down = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and leq(elements[i], elements[j]):
                up[i] |= 1 << j
                down[j] |= 1 << i
    alive = (1 << n) - 1

    def single_cover(mask, other):
        # covers are the members of ``mask`` with nothing of ``mask`` strictly between
        found = 0
        m = mask
        while m:
            low = m & -m
            y = low.bit_length() - 1
            if not other[y] & mask:
                found += 1
                if found > 1:
                    return False
            m ^= low
        return found == 1

    changed = True
    while changed:
        changed = False
        for x in range(n):
            if not alive >> x & 1:
                continue
            if single_cover(up[x] & alive, down) or single_cover(down[x] & alive, up):
                alive &= ~(1 << x)
                changed = True
    return [e for i, e in enumerate(elements) if alive >> i & 1]
