"""Betti numbers of Frobenius complexes, predicted and computed.

``frobenius_betti`` builds the order complex of ``(0, x)`` and runs exact
homology on it.  ``predicted_ext_betti`` instead evaluates the wedge formula
for ``Lambda[rho/r]`` from Betti numbers of the base monoid.  The
verification harnesses compare the two grade by grade.

The formal symbol S^-2 (grade 0) never reaches the homology engine: it is a
branch on the grade returning ``{-2: 1}``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .complexes import (
    GF2,
    BettiVector,
    Field,
    order_complex,
    poset_core,
    reduced_betti,
)
from .errors import InvalidInputError
from .extension import (
    ExtElement,
    ExtMonoid,
    ext_elements_up_to,
    ext_leq,
    ext_open_interval,
)
from .monoid import (
    _leq_unchecked,
    _sub,
    ell_rho,
    elements_up_to,
    open_interval,
)


def _grade(M, x):
    return M.element(x)


def _is_zero(M, x) -> bool:
    return x == M.zero


def frobenius_complex(M, x, reduce: bool = True):
    """Order complex of the open interval ``(0, x)``; None for ``x = 0``.

    With ``reduce`` the poset is first cut down to its core (beat points
    removed), which keeps the homotopy type and shrinks the complex.
    """
    x = _grade(M, x)
    if _is_zero(M, x):
        return None
    if isinstance(M, ExtMonoid):
        interval = ext_open_interval(M, x)

        def leq(a, b):
            return ext_leq(M, a, b)
    else:
        interval = open_interval(M, x)

        def leq(a, b):
            return _leq_unchecked(M, a, b)

    elems = interval.elements
    if reduce:
        elems = poset_core(elems, leq)
    return order_complex(elems, leq)


def frobenius_betti(M, x, field: Field = GF2, reduce: bool = True) -> BettiVector:
    """Reduced Betti vector of the Frobenius complex at grade ``x``."""
    K = frobenius_complex(M, x, reduce=reduce)
    if K is None:
        return BettiVector({-2: 1})
    return reduced_betti(K, field)


def tor_betti(M, x, field: Field = GF2, reduce: bool = True) -> BettiVector:
    """Tor dimensions at grade ``x``: entry ``i`` is reduced Betti ``i - 2``."""
    return frobenius_betti(M, x, field, reduce).shift(2)


def grades_up_to(M, cap) -> list:
    """Grades of ``M`` in the cap box (lambda-part for extensions), sorted."""
    if isinstance(M, ExtMonoid):
        return ext_elements_up_to(M, cap)
    return elements_up_to(M, cap)


class BettiTable(dict):
    """Map ``grade -> BettiVector`` (Tor-indexed), in grade order."""

    def rows(self):
        """``(grade, i, betti)`` triples with nonzero betti, sorted."""
        for g, vec in self.items():
            for i in sorted(vec):
                yield g, i, vec[i]

    def to_tsv(self) -> str:
        lines = ["grade\ti\tbetti"]
        lines += [f"{format_grade(g)}\t{i}\t{b}" for g, i, b in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        entries = [
            {"grade": grade_to_json(g), "betti": {str(i): v for i, v in sorted(vec.items())}}
            for g, vec in self.items()
        ]
        return json.dumps(entries, indent=1)


def format_grade(g) -> str:
    if isinstance(g, ExtElement):
        return f"{format_grade(g.lam)};{g.k}"
    return str(g[0]) if len(g) == 1 else ",".join(map(str, g))


def grade_to_json(g):
    if isinstance(g, ExtElement):
        return {"lambda": list(g.lam), "k": g.k}
    return list(g)


def _tor_worker(args):
    M, x, field, reduce = args
    return tor_betti(M, x, field, reduce)


def default_jobs() -> int:
    """Worker count from ``FROBCX_THREADS`` (default 1)."""
    raw = os.environ.get("FROBCX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInputError(f"FROBCX_THREADS must be an integer, got {raw!r}") from None


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return [fn(a) for a in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def betti_table(M, cap, field: Field = GF2, reduce: bool = True, jobs: int = 1) -> BettiTable:
    """Tor-indexed Betti vectors for every grade in the cap box."""
    grades = grades_up_to(M, cap)
    vecs = _map(_tor_worker, [(M, g, field, reduce) for g in grades], jobs)
    return BettiTable(zip(grades, vecs))


def predicted_ext_betti(E: ExtMonoid, x, field: Field = GF2, reduce: bool = True) -> BettiVector:
    """Reduced Betti vector of ``F(x; E)`` as the wedge formula predicts it.

    For ``x = (lam, k)`` with ``k <= 1`` this is the sum over
    ``l = 0..ell_rho(lam)`` of base Betti vectors at ``lam - l*rho`` shifted
    up by ``2l + k``.  For ``k >= 2`` the complex is contractible.
    """
    x = E.element(x)
    if x.k >= 2:
        return BettiVector()
    M = E.base
    total = BettiVector()
    for ell in range(ell_rho(M, E.rho, x.lam) + 1):
        mu = x.lam
        for _ in range(ell):
            mu = _sub(mu, E.rho)
        total = total + frobenius_betti(M, mu, field, reduce).shift(2 * ell + x.k)
    return total


@dataclass
class GradeCheck:
    grade: Any
    direct: BettiVector
    predicted: BettiVector

    @property
    def equal(self) -> bool:
        return self.direct == self.predicted


@dataclass
class VerificationReport:
    cap: Any
    field: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.equal for c in self.checks)

    @property
    def n_checked(self) -> int:
        return len(self.checks)

    @property
    def n_failed(self) -> int:
        return sum(not c.equal for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.equal]

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "cap": list(self.cap),
            "field": self.field,
            "checked": self.n_checked,
            "failed": self.n_failed,
            "grades": [
                {
                    "grade": grade_to_json(c.grade),
                    "direct": {str(i): v for i, v in sorted(c.direct.items())},
                    "predicted": {str(i): v for i, v in sorted(c.predicted.items())},
                    "equal": c.equal,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _verify_worker(args):
    E, x, field, reduce = args
    return GradeCheck(x, frobenius_betti(E, x, field, reduce), predicted_ext_betti(E, x, field, reduce))


def verify_extension(E: ExtMonoid, cap, field: Field = GF2, reduce: bool = True, jobs: int = 1):
    """Compare direct homology with the predicted Betti vector at every grade.

    The sweep never stops early; inspect ``report.failures()`` for mismatches.
    """
    cap = E.base.element(cap)
    grades = ext_elements_up_to(E, cap)
    checks = _map(_verify_worker, [(E, x, field, reduce) for x in grades], jobs)
    return VerificationReport(cap, field.name, checks)


def _suspension_worker(args):
    E, lam, field, reduce = args
    upper = frobenius_betti(E, ExtElement(lam, 1), field, reduce)
    lower = frobenius_betti(E, ExtElement(lam, 0), field, reduce)
    return GradeCheck(lam, upper, lower.shift(1))


def check_suspension_prop(E: ExtMonoid, cap, field: Field = GF2, reduce: bool = True, jobs: int = 1):
    """For ``r = 2``: Betti of ``(lam, 1)`` equals Betti of ``(lam, 0)`` shifted by one.

    In the returned report ``direct`` holds the ``(lam, 1)`` vector and
    ``predicted`` the shifted ``(lam, 0)`` vector.
    """
    if E.r != 2:
        raise InvalidInputError(f"suspension check needs r = 2, got r = {E.r}")
    cap = E.base.element(cap)
    lams = elements_up_to(E.base, cap)
    checks = _map(_suspension_worker, [(E, lam, field, reduce) for lam in lams], jobs)
    return VerificationReport(cap, field.name, checks)


__all__ = [
    "BettiTable",
    "GradeCheck",
    "VerificationReport",
    "betti_table",
    "check_suspension_prop",
    "frobenius_betti",
    "frobenius_complex",
    "grades_up_to",
    "predicted_ext_betti",
    "tor_betti",
    "verify_extension",
]
