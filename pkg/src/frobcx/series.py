"""Truncated multigraded Poincare series with exact integer coefficients.

A series maps ``(i, grade)`` to a coefficient, where ``i`` is the power of
``t`` and ``grade`` the exponent vector of ``z``.  Grades are tuples for
submonoids of N^d and ``ExtElement`` pairs for extension monoids; in the
second case ``z^(lam + k*rho/r)`` is keyed by ``(lam, k)`` so no fractional
exponent ever appears (it prints as ``z^(lam;k)``).  A term survives truncation iff the lambda-part of its
grade is componentwise ``<= cap``; the power of ``t`` is never capped.

>>> expand_closed_form(closed_form("two_gen", a=2, b=3), 8).to_string()
'1 + t*z^2 + t*z^3 + t^2*z^5 + t^2*z^6 + t^3*z^8'
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field

from .complexes import GF2, Field
from .errors import InvalidInputError
from .extension import ExtElement, ExtMonoid
from .frobenius import betti_table, grade_to_json
from .monoid import AffineMonoid, _add, _coerce, _leq


def _lam(g):
    return g.lam if isinstance(g, ExtElement) else g


@dataclass
class GradedSeries:
    cap: tuple
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.cap, int):
            self.cap = (self.cap,)
        self.cap = tuple(self.cap)
        clean = {}
        for (i, g), c in self.terms.items():
            if c < 0:
                raise InvalidInputError(f"negative coefficient at {(i, g)!r}")
            if c and _leq(_lam(g), self.cap):
                clean[(i, g)] = c
        self.terms = clean

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.cap == other.cap and self.terms == other.terms

    def truncate(self, cap) -> "GradedSeries":
        cap = (cap,) if isinstance(cap, int) else tuple(cap)
        if not _leq(cap, self.cap):
            raise InvalidInputError(f"cannot truncate a series known up to {self.cap} at {cap}")
        return GradedSeries(cap, self.terms)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        """Product of two tuple-graded series, truncated at the smaller cap."""
        cap = tuple(min(a, b) for a, b in zip(self.cap, other.cap))
        out = defaultdict(int)
        for (i, g), c in self.terms.items():
            if not _leq(g, cap):
                continue
            for (j, h), e in other.terms.items():
                s = _add(g, h)
                if _leq(s, cap):
                    out[(i + j, s)] += c * e
        return GradedSeries(cap, dict(out))

    def map_grades(self, fn, cap=None) -> "GradedSeries":
        """Push terms through a grade map (e.g. a numerical realization)."""
        out = defaultdict(int)
        for (i, g), c in self.terms.items():
            out[(i, tuple(fn(g)))] += c
        return GradedSeries(self.cap if cap is None else cap, dict(out))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (_sort_key(kv[0][1]), kv[0][0]))

    def to_json(self) -> str:
        return json.dumps(
            [{"i": i, "grade": grade_to_json(g), "coeff": c} for (i, g), c in self.sorted_terms()]
        )

    def to_string(self) -> str:
        parts = [_monomial(i, g, c) for (i, g), c in self.sorted_terms()]
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_string()


def _sort_key(g):
    if isinstance(g, ExtElement):
        return (g.lam, g.k)
    return (g, 0)


def _monomial(i, g, c) -> str:
    factors = []
    if i:
        factors.append("t" if i == 1 else f"t^{i}")
    if isinstance(g, ExtElement):
        if g.k:
            factors.append(f"z^({','.join(map(str, g.lam))};{g.k})")
        elif any(g.lam):
            factors.append(_zpow(g.lam))
    elif any(g):
        factors.append(_zpow(g))
    body = "*".join(factors)
    if not body:
        return str(c)
    return body if c == 1 else f"{c}*{body}"


def _zpow(g) -> str:
    if len(g) == 1:
        return "z" if g[0] == 1 else f"z^{g[0]}"
    return f"z^({','.join(map(str, g))})"


def _cap_for(M, cap):
    base = M.base if isinstance(M, ExtMonoid) else M
    return base.element(cap)


def direct_series(M, cap, field: Field = GF2, reduce: bool = True, jobs: int = 1) -> GradedSeries:
    """Poincare series read off the Betti table of ``M`` up to ``cap``."""
    cap = _cap_for(M, cap)
    table = betti_table(M, cap, field, reduce=reduce, jobs=jobs)
    return GradedSeries(cap, {(i, g): b for g, i, b in table.rows()})


def extension_series(P: GradedSeries, rho, r: int, cap) -> GradedSeries:
    """Multiply ``P`` by ``(1 + t z^(rho/r)) / (1 - t^2 z^rho)``.

    ``P`` is the series of a base monoid; the result is keyed by
    ``ExtElement`` grades of the extension.
    """
    cap = (cap,) if isinstance(cap, int) else tuple(cap)
    rho = _coerce(rho, len(cap))
    if not _leq(cap, P.cap):
        raise InvalidInputError(f"base series known only up to {P.cap}, need {cap}")
    if not any(rho):
        raise InvalidInputError("rho must be nonzero")
    if r < 2:
        raise InvalidInputError("r must be >= 2")
    out = defaultdict(int)
    for (i, mu), c in P.terms.items():
        lam, ell = mu, 0
        while _leq(lam, cap):
            out[(i + 2 * ell, ExtElement(lam, 0))] += c
            out[(i + 2 * ell + 1, ExtElement(lam, 1))] += c
            lam, ell = _add(lam, rho), ell + 1
    return GradedSeries(cap, dict(out))


def divide_by_half_step(P: GradedSeries, rho, cap) -> GradedSeries:
    """``P / (1 - t z^(rho/2))`` with grades keyed in ``Lambda[rho/2]``."""
    cap = (cap,) if isinstance(cap, int) else tuple(cap)
    rho = _coerce(rho, len(cap))
    if not _leq(cap, P.cap):
        raise InvalidInputError(f"base series known only up to {P.cap}, need {cap}")
    out = defaultdict(int)
    for (i, mu), c in P.terms.items():
        j = 0
        while True:
            lam = mu
            for _ in range(j // 2):
                lam = _add(lam, rho)
            if not _leq(lam, cap):
                break
            out[(i + j, ExtElement(lam, j % 2))] += c
            j += 1
    return GradedSeries(cap, dict(out))


@dataclass(frozen=True)
class RationalSeriesExpr:
    """``prod (1 + t^a z^g) / prod (1 - t^a z^g)`` over the listed factors.

    Repeated factors encode multiplicity.
    """

    numerator: tuple
    denominator: tuple = ()

    def __post_init__(self):
        num = tuple(_factor(f) for f in self.numerator)
        den = tuple(_factor(f) for f in self.denominator)
        for a, g in den:
            if not any(g):
                raise InvalidInputError("denominator factor with zero grade does not expand")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __str__(self):
        num = "".join(f"(1+{_monomial(a, g, 1)})" for a, g in self.numerator) or "1"
        den = "".join(f"(1-{_monomial(a, g, 1)})" for a, g in self.denominator)
        return f"{num}/({den})" if den else num


def _factor(f):
    a, g = f
    if isinstance(g, int):
        g = (g,)
    g = tuple(int(c) for c in g)
    if a < 0 or any(c < 0 for c in g):
        raise InvalidInputError(f"factor exponents must be nonnegative: {f!r}")
    return (int(a), g)


def expand_closed_form(expr: RationalSeriesExpr, cap) -> GradedSeries:
    """Exact expansion of ``expr`` truncated at ``cap``."""
    cap = (cap,) if isinstance(cap, int) else tuple(cap)
    zero = (0,) * len(cap)
    result = GradedSeries(cap, {(0, zero): 1})
    for a, g in expr.numerator:
        result = result * GradedSeries(cap, {(0, zero): 1, (a, g): 1})
    for a, g in expr.denominator:
        if len(g) != len(cap):
            raise InvalidInputError("factor dimension does not match cap")
        terms = {}
        n, h = 0, zero
        while _leq(h, cap):
            terms[(a * n, h)] = 1
            n, h = n + 1, _add(h, g)
        result = result * GradedSeries(cap, terms)
    return result


def family_generators(family: str, **params) -> list:
    """Generators of the numerical semigroup behind a closed-form family."""
    _check_family(family, params)
    if family == "two_gen":
        return [params["a"], params["b"]]
    if family == "pqr":
        p, q, r = params["p"], params["q"], params["r"]
        return [p * q, p * r, q * r]
    if family == "arithmetic":
        a, d = params["a"], params["d"]
        return [a, a + d, a + 2 * d]
    p, q, n = params["p"], params["q"], params["n"]
    return [p ** (n - i) * q**i for i in range(n + 1)]


_FAMILY_PARAMS = {
    "two_gen": ("a", "b"),
    "pqr": ("p", "q", "r"),
    "arithmetic": ("a", "d"),
    "geometric": ("p", "q", "n"),
}


def _require(cond, msg):
    if not cond:
        raise InvalidInputError(msg)


def _check_family(family, params):
    if family not in _FAMILY_PARAMS:
        raise InvalidInputError(f"unknown family {family!r}; choose from {sorted(_FAMILY_PARAMS)}")
    for key in _FAMILY_PARAMS[family]:
        _require(isinstance(params.get(key), int), f"{family}: parameter {key!r} must be an integer")
    if family == "two_gen":
        a, b = params["a"], params["b"]
        _require(2 <= a < b, f"two_gen: need 2 <= a < b, got a={a}, b={b}")
        _require(b % a != 0, f"two_gen: need b not in <a>, got a={a}, b={b}")
    elif family == "pqr":
        p, q, r = params["p"], params["q"], params["r"]
        _require(2 <= p < q < r, f"pqr: need 2 <= p < q < r, got {p}, {q}, {r}")
        _require(
            math.gcd(p, q) == math.gcd(p, r) == math.gcd(q, r) == 1,
            f"pqr: p, q, r must be pairwise coprime, got {p}, {q}, {r}",
        )
    elif family == "arithmetic":
        a, d = params["a"], params["d"]
        _require(a > 0 and a % 2 == 0, f"arithmetic: a must be a positive even number, got {a}")
        _require(d > 0 and d % 2 == 1, f"arithmetic: d must be a positive odd number, got {d}")
        _require((a + 2 * d) % a != 0, f"arithmetic: need a+2d not in <a>, got a={a}, d={d}")
    else:
        p, q, n = params["p"], params["q"], params["n"]
        _require(2 <= p < q, f"geometric: need 2 <= p < q, got p={p}, q={q}")
        _require(math.gcd(p, q) == 1, f"geometric: p and q must be coprime, got {p}, {q}")
        _require(n >= 1, f"geometric: need n >= 1, got {n}")


def closed_form(family: str, **params) -> RationalSeriesExpr:
    """The rational Poincare series of a numerical-semigroup family.

    Families: ``two_gen(a, b)``, ``pqr(p, q, r)``, ``arithmetic(a, d)``,
    ``geometric(p, q, n)``.
    """
    _check_family(family, params)
    if family == "two_gen":
        a, b = params["a"], params["b"]
        return RationalSeriesExpr(((1, a), (1, b)), ((2, math.lcm(a, b)),))
    if family == "pqr":
        p, q, r = params["p"], params["q"], params["r"]
        return RationalSeriesExpr(((1, p * q), (1, p * r), (1, q * r)), ((2, p * q * r),) * 2)
    if family == "arithmetic":
        a, d = params["a"], params["d"]
        m = math.lcm(a, a + 2 * d)
        return RationalSeriesExpr(((1, a), (1, a + 2 * d)), ((2, m), (1, a + d)))
    p, q, n = params["p"], params["q"], params["n"]
    num = tuple((1, p ** (n - i) * q**i) for i in range(n + 1))
    den = tuple((2, p ** (n - i + 1) * q**i) for i in range(1, n + 1))
    return RationalSeriesExpr(num, den)


def geometric_p2_form(q: int, n: int) -> RationalSeriesExpr:
    """Simplified geometric-family series for ``p = 2``:
    ``(1 + t z^(2^n)) / prod_{i=1..n} (1 - t z^(2^(n-i) q^i))``."""
    _check_family("geometric", {"p": 2, "q": q, "n": n})
    den = tuple((1, 2 ** (n - i) * q**i) for i in range(1, n + 1))
    return RationalSeriesExpr(((1, 2**n),), den)


def substitute_scale(obj, p: int):
    """Replace ``z`` by ``z^p``: every grade is multiplied by ``p``."""
    if not isinstance(p, int) or p < 1:
        raise InvalidInputError(f"scale factor must be a positive integer, got {p!r}")

    def mul(g):
        return tuple(p * c for c in g)

    if isinstance(obj, RationalSeriesExpr):
        return RationalSeriesExpr(
            tuple((a, mul(g)) for a, g in obj.numerator),
            tuple((a, mul(g)) for a, g in obj.denominator),
        )
    if isinstance(obj, GradedSeries):
        terms = {}
        for (i, g), c in obj.terms.items():
            if isinstance(g, ExtElement):
                g = ExtElement(mul(g.lam), g.k)
            else:
                g = mul(g)
            terms[(i, g)] = c
        return GradedSeries(mul(obj.cap), terms)
    raise InvalidInputError(f"cannot scale {type(obj).__name__}")


def family_monoid(family: str, **params) -> AffineMonoid:
    return AffineMonoid.from_generators(family_generators(family, **params))


__all__ = [
    "GradedSeries",
    "RationalSeriesExpr",
    "closed_form",
    "direct_series",
    "divide_by_half_step",
    "expand_closed_form",
    "extension_series",
    "family_generators",
    "family_monoid",
    "geometric_p2_form",
    "substitute_scale",
]
