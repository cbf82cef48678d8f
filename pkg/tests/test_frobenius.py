import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from frobcx import InvalidInputError
from frobcx.complexes import GF2, QQ, BettiVector, Field, euler_characteristic, reduced_betti
from frobcx.extension import ExtElement, adjoin, numerical_realization
from frobcx.frobenius import (
    betti_table,
    check_suspension_prop,
    frobenius_betti,
    frobenius_complex,
    predicted_ext_betti,
    tor_betti,
    verify_extension,
)
from frobcx.monoid import AffineMonoid, elements_up_to, is_reducible, scale

G23 = AffineMonoid.from_generators([2, 3])
A2 = AffineMonoid.from_generators([2])
E = adjoin(A2, 6, 2)


def X(lam, k):
    return ExtElement((lam,), k)


# reduced Betti of F(lam; <2,3>) from tests/oracles.py (subset chains + dense ranks)
G23_BRUTE = {
    0: {-2: 1}, 2: {-1: 1}, 3: {-1: 1}, 4: {}, 5: {0: 1}, 6: {0: 1},
    7: {}, 8: {1: 1}, 9: {1: 1}, 10: {}, 11: {2: 1}, 12: {2: 1},
}


def test_frobenius_betti_examples():
    assert frobenius_betti(G23, 0) == {-2: 1}
    assert frobenius_betti(G23, 2) == {-1: 1}
    assert frobenius_betti(G23, 6) == {0: 1}


@pytest.mark.parametrize("reduce", [True, False])
def test_frobenius_betti_matches_brute_force(reduce):
    for lam, expected in G23_BRUTE.items():
        assert frobenius_betti(G23, lam, reduce=reduce) == expected


def test_brute_force_table_is_current():
    for lam in (6, 8, 11):
        assert oracles.frobenius_betti_brute([(2,), (3,)], (lam,)) == G23_BRUTE[lam]


def test_tor_betti_examples():
    assert tor_betti(G23, 0) == {0: 1}
    assert tor_betti(G23, 2) == {1: 1}
    assert tor_betti(G23, 6) == {2: 1}


def test_betti_table_examples():
    N = AffineMonoid.from_generators([1])
    table = betti_table(N, 5)
    assert list(table) == [(n,) for n in range(6)]
    assert table[(0,)] == {0: 1} and table[(1,)] == {1: 1}
    assert all(table[(n,)] == {} for n in range(2, 6))

    table = betti_table(G23, 6)
    nonzero = [g[0] for g, v in table.items() if v]
    assert nonzero == [0, 2, 3, 5, 6]
    assert table[(4,)] == {}

    table = betti_table(A2, 6)
    assert {g[0]: dict(v) for g, v in table.items() if v} == {0: {0: 1}, 2: {1: 1}}


def test_betti_table_serialization():
    table = betti_table(G23, 6)
    tsv = table.to_tsv().splitlines()
    assert tsv[0] == "grade\ti\tbetti"
    assert tsv[1:] == ["0\t0\t1", "2\t1\t1", "3\t1\t1", "5\t2\t1", "6\t2\t1"]
    data = json.loads(table.to_json())
    assert data[0] == {"grade": [0], "betti": {"0": 1}}
    assert data[3] == {"grade": [4], "betti": {}}


def test_planar_monoid_against_brute_force():
    gens = [(2, 0), (1, 1), (0, 2)]
    M = AffineMonoid(2, tuple(gens))
    for lam in elements_up_to(M, (4, 4)):
        assert frobenius_betti(M, lam) == oracles.frobenius_betti_brute(gens, lam)


def test_predicted_ext_betti_examples():
    assert predicted_ext_betti(E, X(0, 0)) == {-2: 1}
    # F(6;<2>) is contractible; the l=1 term is S^-2 suspended twice
    assert predicted_ext_betti(E, X(6, 0)) == {0: 1}
    assert frobenius_betti(G23, 6) == {0: 1}
    E3 = adjoin(A2, 6, 3)
    for lam in (0, 2, 6, 12):
        assert predicted_ext_betti(E3, X(lam, 2)) == {}


def test_verify_extension_examples():
    for gens, rho, r, cap in [([2], 6, 2, 12), ([6, 10], 30, 5, 60), ([4, 10], 14, 2, 40)]:
        report = verify_extension(adjoin(AffineMonoid.from_generators(gens), rho, r), cap, GF2)
        assert report.passed, report.failures()
        assert report.n_failed == 0
    data = json.loads(report.to_json())
    assert data["pass"] is True and data["checked"] == report.n_checked


def test_verify_extension_reports_every_mismatch():
    report = verify_extension(E, 12)
    # corrupt two predictions and check both show up
    for i in (3, 5):
        report.checks[i].predicted = BettiVector({7: 1})
    assert not report.passed and report.n_failed == 2
    assert json.loads(report.to_json())["pass"] is False


def test_suspension_examples():
    report = check_suspension_prop(E, 6)
    by_lam = {c.grade[0]: c for c in report.checks}
    assert by_lam[0].direct == {-1: 1} and by_lam[0].predicted == {-1: 1}
    assert by_lam[2].equal and by_lam[6].equal
    assert report.passed
    with pytest.raises(InvalidInputError):
        check_suspension_prop(adjoin(A2, 6, 3), 6)


def test_parallel_matches_serial():
    serial = betti_table(G23, 14)
    assert betti_table(G23, 14, jobs=3) == serial
    assert list(betti_table(G23, 14, jobs=3)) == list(serial)


# -- properties --------------------------------------------------------------


@st.composite
def small_extensions(draw):
    gens = draw(st.lists(st.integers(2, 6), min_size=1, max_size=2))
    base = AffineMonoid.from_generators(gens)
    reducible = [x for x in elements_up_to(base, 12) if any(x) and is_reducible(base, x)]
    rho = reducible[draw(st.integers(0, len(reducible) - 1))]
    return adjoin(base, rho, draw(st.integers(2, 4)))


@settings(max_examples=15, deadline=None)
@given(small_extensions(), st.sampled_from([GF2, Field(3), QQ]))
def test_main_identity_on_random_extensions(E, field):
    report = verify_extension(E, 16, field)
    assert report.passed, report.failures()


@settings(max_examples=10, deadline=None)
@given(small_extensions())
def test_reduction_does_not_change_betti(E):
    for lam in elements_up_to(E.base, 8):
        for k in range(E.r):
            x = ExtElement(lam, k)
            assert frobenius_betti(E, x, reduce=True) == frobenius_betti(E, x, reduce=False)


@settings(max_examples=10, deadline=None)
@given(small_extensions())
def test_euler_consistency_on_frobenius_complexes(E):
    for lam in elements_up_to(E.base, 12):
        for k in range(E.r):
            K = frobenius_complex(E, ExtElement(lam, k))
            if K is not None:
                assert reduced_betti(K).euler() == euler_characteristic(K)


@pytest.mark.parametrize("gens, rho, r", [([2], 6, 2), ([4, 10], 14, 2), ([6, 10], 30, 2), ([3], 6, 3)])
def test_realization_coherence(gens, rho, r):
    E = adjoin(AffineMonoid.from_generators(gens), rho, r)
    M, f = numerical_realization(E)
    ext_table = betti_table(E, 30)
    for x, vec in ext_table.items():
        assert tor_betti(M, f(x)) == vec


@pytest.mark.parametrize("p", [2, 3])
def test_scaling_coherence(p):
    big = betti_table(scale(G23, p), 16 * p)
    small = betti_table(G23, 16)
    for lam, vec in small.items():
        assert big[(p * lam[0],)] == vec
    assert sorted(big) == [(p * lam[0],) for lam in small]
