"""Adjoining an r-th part of a reducible element: the monoid Lambda[rho/r].

An element ``lam + k*rho/r`` is stored as the pair ``ExtElement(lam, k)``
with ``lam`` in the base monoid and ``0 <= k < r``; every element has exactly
one such pair.  Nothing is ever materialized as a quotient.

>>> E = adjoin(AffineMonoid.from_generators([2]), 6, 2)
>>> ext_leq(E, ExtElement((0,), 1), ExtElement((2,), 1))
True
>>> ext_leq(E, ExtElement((2,), 1), ExtElement((4,), 0))
False
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import InvalidInputError
from .monoid import (
    AffineMonoid,
    Interval,
    _add,
    _leq_unchecked,
    build_interval,
    contains,
    elements_up_to,
    is_reducible,
)


class ExtElement(NamedTuple):
    lam: tuple
    k: int

    def __repr__(self):
        lam = self.lam[0] if len(self.lam) == 1 else self.lam
        return f"({lam},{self.k})"


@dataclass(frozen=True)
class ExtMonoid:
    base: AffineMonoid
    rho: tuple
    r: int

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def zero(self) -> ExtElement:
        return ExtElement(self.base.zero, 0)

    def element(self, x) -> ExtElement:
        """Validate and normalize ``x`` given as an ExtElement or a ``(lam, k)`` pair."""
        try:
            lam, k = x
        except (TypeError, ValueError):
            raise InvalidInputError(f"expected a (lambda, k) pair, got {x!r}") from None
        lam = self.base.element(lam)
        if not isinstance(k, int) or not 0 <= k < self.r:
            raise InvalidInputError(f"k must be an integer in [0, {self.r}), got {k!r}")
        if not contains(self.base, lam):
            raise InvalidInputError(f"{lam!r} is not in the base monoid {self.base!r}")
        return ExtElement(lam, k)

    def add(self, x: ExtElement, y: ExtElement) -> ExtElement:
        carry, k = divmod(x.k + y.k, self.r)
        lam = _add(x.lam, y.lam)
        for _ in range(carry):
            lam = _add(lam, self.rho)
        return ExtElement(lam, k)

    def to_spec(self) -> dict:
        return {"base": self.base.to_spec(), "rho": list(self.rho), "r": self.r}

    def __repr__(self):
        rho = self.rho[0] if self.dim == 1 else self.rho
        return f"{self.base!r}[{rho}/{self.r}]"


def adjoin(M, rho, r: int) -> ExtMonoid:
    """Build ``M[rho/r]``.

    ``M`` may itself be an ExtMonoid provided it has a numerical realization;
    the extension is then taken over the realized submonoid of N.
    """
    if isinstance(M, ExtMonoid):
        real = numerical_realization(M)
        if real is None:
            raise InvalidInputError(
                f"nested extension of {M!r} needs a numerical realization, which does not exist"
            )
        M = real.monoid
    if not isinstance(r, int) or r < 2:
        raise InvalidInputError(f"r must be an integer >= 2, got {r!r}")
    rho = M.element(rho)
    if not contains(M, rho):
        raise InvalidInputError(f"rho={rho!r} is not in {M!r}")
    if not is_reducible(M, rho):
        raise InvalidInputError(f"rho={rho!r} is irreducible in {M!r}; it must be a sum of two nonzero elements")
    return ExtMonoid(M, rho, r)


def from_spec(spec: dict) -> ExtMonoid:
    """Build from ``{"base": <monoid spec>, "rho": ..., "r": ...}``."""
    for key in ("base", "rho", "r"):
        if not isinstance(spec, dict) or key not in spec:
            raise InvalidInputError(f"extension spec needs a {key!r} field")
    return adjoin(AffineMonoid.from_spec(spec["base"]), spec["rho"], spec["r"])


def ext_leq(E: ExtMonoid, x, y) -> bool:
    """Divisibility order of ``E`` on pairs."""
    x, y = ExtElement(*x), ExtElement(*y)
    if x.k <= y.k:
        return _leq_unchecked(E.base, x.lam, y.lam)
    return _leq_unchecked(E.base, _add(x.lam, E.rho), y.lam)


def ext_elements_up_to(E: ExtMonoid, cap) -> list:
    """All pairs ``(lam, k)`` with ``lam <= cap`` componentwise, sorted."""
    return [ExtElement(lam, k) for lam in elements_up_to(E.base, cap) for k in range(E.r)]


def ext_open_interval(E: ExtMonoid, x) -> Interval:
    """The poset ``(0, x)`` in ``E``."""
    x = E.element(x)
    zero = E.zero
    if x == zero:
        raise InvalidInputError("open interval below 0 is not defined; use the S^-2 convention")
    cands = (y for y in ext_elements_up_to(E, x.lam) if y != zero and y != x)
    elems = [y for y in cands if ext_leq(E, y, x)]
    return build_interval(elems, lambda a, b: ext_leq(E, a, b))


class Realization(NamedTuple):
    monoid: AffineMonoid
    grade_map: Callable


def numerical_realization(E: ExtMonoid):
    """Identify ``E`` with a submonoid of N, when that is possible.

    Requires d = 1, every base generator divisible by ``r``, ``rho = r*b``
    and ``gcd(r, b) = 1``.  Returns ``Realization(<a_1,...,a_g,b>, f)`` with
    ``f(lam, k) = lam + k*b``, or None if a hypothesis fails.
    """
    if E.dim != 1:
        return None
    r = E.r
    if any(g[0] % r for g in E.base.generators):
        return None
    rho = E.rho[0]
    if rho % r:
        return None
    b = rho // r
    if math.gcd(r, b) != 1:
        return None
    gens = [g[0] for g in E.base.generators] + [b]

    def grade_map(x):
        lam, k = x
        return (lam[0] + k * b,)

    return Realization(AffineMonoid.from_generators(gens), grade_map)


__all__ = [
    "ExtElement",
    "ExtMonoid",
    "Realization",
    "adjoin",
    "ext_elements_up_to",
    "ext_leq",
    "ext_open_interval",
    "from_spec",
    "numerical_realization",
]
