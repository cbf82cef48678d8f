"""Finitely generated submonoids of N^d and their divisibility order.

Elements are plain tuples of nonnegative ints.  For ``d == 1`` the public
functions also accept bare ints and always hand back 1-tuples.

Submonoids of N^d are cancellative and have no nonzero units, so no runtime
check for either is made.

>>> M = AffineMonoid.from_generators([2, 3])
>>> contains(M, 5), contains(M, 1)
(True, False)
>>> elements_up_to(M, 7)
[(0,), (2,), (3,), (4,), (5,), (6,), (7,)]
>>> open_interval(M, 6).elements
[(2,), (3,), (4,)]
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import InvalidInputError

Element = tuple


def _coerce(x, dim: int) -> tuple:
    if isinstance(x, int):
        x = (x,)
    try:
        x = tuple(int(c) for c in x)
    except TypeError:
        raise InvalidInputError(f"not a grade vector: {x!r}") from None
    if len(x) != dim:
        raise InvalidInputError(f"expected an element of N^{dim}, got {x!r}")
    if any(c < 0 for c in x):
        raise InvalidInputError(f"negative coordinate in {x!r}")
    return x


def _leq(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class AffineMonoid:
    """The submonoid of N^dim generated by ``generators``.

    Membership answers are memoized on the instance.  The memo only ever
    grows with facts that are true, so concurrent readers see consistent
    results.
    """

    dim: int
    generators: tuple
    _memo: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: Any = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidInputError(f"dim must be a positive integer, got {self.dim!r}")
        gens = tuple(_coerce(g, self.dim) for g in self.generators)
        if not gens:
            raise InvalidInputError("at least one generator is required")
        if any(not any(g) for g in gens):
            raise InvalidInputError("generators must be nonzero")
        # canonical order, duplicates dropped
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))

    @classmethod
    def from_generators(cls, gens: Iterable) -> "AffineMonoid":
        gens = list(gens)
        if not gens:
            raise InvalidInputError("at least one generator is required")
        first = gens[0]
        dim = 1 if isinstance(first, int) else len(first)
        return cls(dim, tuple(gens))

    @classmethod
    def from_spec(cls, spec: dict) -> "AffineMonoid":
        """Build from ``{"dim": d, "generators": [[...], ...]}``.

        For ``d == 1`` the shorthand ``{"generators": [2, 3]}`` is accepted.
        """
        if not isinstance(spec, dict) or "generators" not in spec:
            raise InvalidInputError("monoid spec needs a 'generators' field")
        gens = spec["generators"]
        if not isinstance(gens, list) or not gens:
            raise InvalidInputError("'generators' must be a nonempty list")
        if "dim" in spec:
            dim = spec["dim"]
        elif all(isinstance(g, int) for g in gens):
            dim = 1
        else:
            raise InvalidInputError("'dim' is required unless generators are plain integers")
        if not isinstance(dim, int):
            raise InvalidInputError("'dim' must be an integer")
        return cls(dim, tuple(gens))

    def to_spec(self) -> dict:
        return {"dim": self.dim, "generators": [list(g) for g in self.generators]}

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def element(self, x) -> tuple:
        return _coerce(x, self.dim)

    def __eq__(self, other):
        if not isinstance(other, AffineMonoid):
            return NotImplemented
        return self.dim == other.dim and self.generators == other.generators

    def __hash__(self):
        return hash((self.dim, self.generators))

    def __repr__(self):
        if self.dim == 1:
            return "<" + ",".join(str(g[0]) for g in self.generators) + ">"
        return f"AffineMonoid(dim={self.dim}, generators={list(self.generators)})"

    def __getstate__(self):
        return {"dim": self.dim, "generators": self.generators}

    def __setstate__(self, state):
        object.__setattr__(self, "dim", state["dim"])
        object.__setattr__(self, "generators", state["generators"])
        object.__setattr__(self, "_memo", {})
        object.__setattr__(self, "_lock", threading.Lock())

    def _box_members(self, cap: tuple) -> set:
        # reachability from 0 inside the box [0, cap]
        seen = {self.zero}
        stack = [self.zero]
        gens = self.generators
        while stack:
            x = stack.pop()
            for g in gens:
                y = _add(x, g)
                if y not in seen and _leq(y, cap):
                    seen.add(y)
                    stack.append(y)
        return seen

    def _member(self, x: tuple) -> bool:
        hit = self._memo.get(x)
        if hit is not None:
            return hit
        members = self._box_members(x)
        with self._lock:
            for y in itertools.product(*(range(c + 1) for c in x)):
                self._memo[y] = y in members
        return self._memo[x]


@dataclass(frozen=True)
class Interval:
    """A finite poset: ``elements`` plus the strict relation as index pairs.

    ``(i, j) in relation`` means ``elements[i] < elements[j]``.
    """

    elements: list
    relation: frozenset

    def __len__(self):
        return len(self.elements)

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.relation

    def leq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.relation

    def strict_pairs(self) -> list:
        """Pairs ``(x, y)`` of elements with x < y, in index order."""
        return [(self.elements[i], self.elements[j]) for i, j in sorted(self.relation)]

    def has_min_or_max(self) -> bool:
        n = len(self.elements)
        if n == 0:
            return False
        for v in range(n):
            if all(self.leq(v, w) for w in range(n)) or all(self.leq(w, v) for w in range(n)):
                return True
        return False


def build_interval(elements: Sequence[Hashable], less: Callable[[Any, Any], bool]) -> Interval:
    elements = list(elements)
    rel = frozenset(
        (i, j)
        for i, a in enumerate(elements)
        for j, b in enumerate(elements)
        if i != j and less(a, b)
    )
    return Interval(elements, rel)


def contains(M: AffineMonoid, mu) -> bool:
    """True iff ``mu`` is a nonnegative integer combination of generators."""
    return M._member(M.element(mu))


def _require_member(M, x, what):
    x = M.element(x)
    if not M._member(x):
        raise InvalidInputError(f"{what} {x!r} is not in {M!r}")
    return x


def subtract(M: AffineMonoid, mu, lam):
    """Return ``mu - lam`` when ``lam <=_M mu``, else ``None``."""
    mu = _require_member(M, mu, "element")
    lam = _require_member(M, lam, "element")
    if not _leq(lam, mu):
        return None
    nu = _sub(mu, lam)
    return nu if M._member(nu) else None


def leq(M: AffineMonoid, lam, mu) -> bool:
    """The divisibility order: ``lam <=_M mu``.  Both must be in ``M``."""
    return subtract(M, mu, lam) is not None


def _leq_unchecked(M, lam, mu):
    return _leq(lam, mu) and M._member(_sub(mu, lam))


def elements_up_to(M: AffineMonoid, cap) -> list:
    """All members of ``M`` that are componentwise ``<= cap``, sorted."""
    cap = M.element(cap)
    return sorted(M._box_members(cap))


def open_interval(M: AffineMonoid, lam) -> Interval:
    """The poset ``(0, lam)`` under the divisibility order of ``M``."""
    lam = _require_member(M, lam, "element")
    if not any(lam):
        raise InvalidInputError("open interval below 0 is not defined; use the S^-2 convention")
    zero = M.zero
    elems = [
        mu
        for mu in elements_up_to(M, lam)
        if mu != zero and mu != lam and M._member(_sub(lam, mu))
    ]
    return build_interval(elems, lambda a, b: _leq_unchecked(M, a, b))


def ell_rho(M: AffineMonoid, rho, lam) -> int:
    """Largest ``l`` with ``l * rho <=_M lam``."""
    rho = _require_member(M, rho, "rho")
    lam = _require_member(M, lam, "element")
    if not any(rho):
        raise InvalidInputError("rho must be nonzero")
    ell = 0
    multiple = rho
    while _leq_unchecked(M, multiple, lam):
        ell += 1
        multiple = _add(multiple, rho)
    return ell


def is_reducible(M: AffineMonoid, rho) -> bool:
    """True iff ``rho`` splits as a sum of two nonzero members of ``M``."""
    rho = _require_member(M, rho, "rho")
    zero = M.zero
    return any(
        sigma != zero and sigma != rho and M._member(_sub(rho, sigma))
        for sigma in elements_up_to(M, rho)
    )


def scale(M: AffineMonoid, p: int) -> AffineMonoid:
    """The monoid ``p * M``."""
    if not isinstance(p, int) or p < 1:
        raise InvalidInputError(f"scale factor must be a positive integer, got {p!r}")
    return AffineMonoid(M.dim, tuple(tuple(p * c for c in g) for g in M.generators))
