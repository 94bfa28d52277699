from chainmin.misc import *
from chainmin.core import Family, BooleanLattice, SubspaceLattice, ChainPoset
from chainmin.calc.chains import count_chains
from chainmin.calc.centred import *

import pytest


def test_orderings():
    assert mu_minus(3).mu == (1, 2, 0, 3)
    assert mu_plus(3).mu == (2, 1, 3, 0)
    assert mu_minus(4).mu == (2, 3, 1, 4, 0)
    assert mu_plus(4).mu == (2, 1, 3, 0, 4)
    assert mu_minus(0).mu == (0,)
    assert mu_minus(3)(1) == 1
    assert mu_minus(3).prefix(3) == (0, 1, 2)

    with pytest.raises(ValueError):
        CentredOrdering(3, (0, 1, 2, 3))

    with pytest.raises(ValueError):
        CentredOrdering(3, (1, 1, 2, 3))

    with pytest.raises(ValueError):
        mu_minus(-1)

def test_centred_rank_sets():
    assert centred_rank_sets(3, 1) == [(1,), (2,)]
    assert centred_rank_sets(3, 2) == [(1, 2)]
    assert centred_rank_sets(3, 3) == [(0, 1, 2), (1, 2, 3)]
    assert centred_rank_sets(4, 1) == [(2,)]
    assert centred_rank_sets(4, 2) == [(2, 3), (1, 2)]
    assert is_centred_rank_set((1, 2), 3) == True
    assert is_centred_rank_set((0, 3), 3) == False
    assert is_centred_rank_set((), 3) == True

    with pytest.raises(ValueError):
        centred_rank_sets(3, 5)

def test_breakpoints():
    P = BooleanLattice(3)

    assert breakpoints(P) == (0, 3, 6, 7, 8)
    assert breakpoints(BooleanLattice(4)) == (0, 6, 10, 14, 15, 16)
    assert a_ell(P, 0) == 0
    assert boundary_level(breakpoints(P), 0) == 0
    assert boundary_level(breakpoints(P), 3) == 1
    assert boundary_level(breakpoints(P), 4) == 2

    with pytest.raises(ValueError):
        a_ell(P, 5)

def test_build_X():
    P = BooleanLattice(3)
    X = build_X(P, 4)

    assert X.elements == (1, 2, 4, 3)
    assert X.ell == 2
    assert count_chains(X.family, 2) == m_k(P, 2, 4)
    assert build_X(P, 4, mu_plus(3)).elements == (3, 5, 6, 1)
    assert build_X(P, 2, tie_order=lambda x: -x).elements == (4, 2)

    with pytest.raises(ValueError):
        build_X(P, 9)

def test_mk_table():
    P = BooleanLattice(3)
    m2, m3 = mk_table(P, 2), mk_table(P, 3)

    assert m2.values == (0, 0, 0, 0, 2, 4, 6, 12, 19)
    assert m2.breakpoints == (0, 3, 6, 7, 8)
    assert m2.delta == (0, 0, 0, 2, 2, 2, 6, 7)
    assert m3.values == (0, 0, 0, 0, 0, 0, 0, 6, 18)
    assert mk_table(P, 1).values == tuple(range(9))
    assert m2.rows()[0] == (0, 0, None, True)
    assert m2.rows()[4] == (4, 2, 2, False)
    assert m2.poset == {'type': 'boolean', 'n': 3}

    for a in range(len(P) + 1):
        assert m_k(P, 2, a) == m2[a]
        assert m_k(P, 2, a, mu_plus(3)) == m2[a]

    with pytest.raises(ValueError):
        m_k(P, 0, 3)

    with pytest.raises(ValueError):
        mk_table(P, 0)

def test_mk_matches_centred_prefix():
    for P in [BooleanLattice(4), SubspaceLattice(2, 3)]:
        table = mk_table(P, 3)

        for a in range(len(P) + 1):
            for mu in orderings(P.n):
                assert count_chains(build_X(P, a, mu).family, 3) == table[a]

def test_mk_tie_order():
    for P in [BooleanLattice(2), BooleanLattice(3), BooleanLattice(4), SubspaceLattice(2, 3)]:
        N = len(P)

        for k in range(2, P.n + 2):
            table = mk_table(P, k)

            for a in range(N + 1):
                for mu in orderings(P.n):
                    for tie in [None, lambda x: -x, lambda x: (7 * x) % (N + 1)]:
                        X = build_X(P, a, mu, tie)

                        assert count_chains(X.family, k) == table[a]
                        assert is_centred(X.family)[0]

def test_centred_families_attain_mk():
    for P in [BooleanLattice(2), BooleanLattice(3), BooleanLattice(4), SubspaceLattice(2, 2)]:
        tables = {k: mk_table(P, k) for k in range(2, P.n + 2)}
        seen = 0

        for mask in range(1 << len(P)):
            if not is_centred_mask(P, mask)[0]:
                continue

            seen += 1
            A = Family.from_mask(P, mask)

            for k, table in tables.items():
                assert count_chains(A, k) == table[len(A)]

        assert seen > len(P)

def test_mk_aliases():
    P = BooleanLattice(3)

    assert m_k(P, chain_size=2, size=4) == 2
    assert m_k(P, 2, size=7) == 12
    assert mk_table(P, chain_size=3).values == (0, 0, 0, 0, 0, 0, 0, 6, 18)

    with pytest.raises(ValueError):
        m_k(P, 2, 4, size=4)

    with pytest.raises(ValueError):
        mk_table(P, k=2, chain_size=2)

def test_convexity():
    P = BooleanLattice(3)

    m2 = convexity_certificate(mk_table(P, 2))
    assert m2
    assert m2.details['strict_jumps'] == [3, 6, 7]
    assert m2.details['changes'] == [3, 6, 7]
    assert m2.details['distinct_deltas'] == 4

    m3 = convexity_certificate(mk_table(P, 3))
    assert m3 and m3.details['strict_jumps'] == [6, 7]

    for n in range(2, 11):
        for k in range(2, min(n + 2, 7)):
            table = mk_table(BooleanLattice(n), k)
            report = convexity_certificate(table)

            assert report
            assert report.details['distinct_deltas'] == n + 3 - k
            assert all(x <= y for x, y in zip(table.values, table.values[1:]))

    for q, dims in [(2, range(1, 5)), (3, range(1, 4))]:
        for n in dims:
            P = SubspaceLattice(q, n)

            for k in range(2, min(n + 2, 6)):
                table = mk_table(P, k)

                assert convexity_certificate(table)
                assert all(x <= y for x, y in zip(table.values, table.values[1:]))

    bad = convexity_certificate(MkTable(2, (0, 2, 3), (0, 1, 2)))
    assert not bad and bad.witness[0] == 'decrease'

    assert convexity_certificate(mk_table(ChainPoset(3), 2))

def test_is_centred():
    P = BooleanLattice(3)

    assert is_centred_mask(P, 0) == (True, None)
    assert is_centred_mask(P, maskOf([0, 1, 2, 4])) == (False, ('i', 3))
    assert is_centred_mask(P, maskOf([1, 3])) == (False, ('ii', 1, (1, 3), (2, 6)))
    assert is_centred(Family.levels(P, (1, 2)))[0] == True
    assert is_centred(build_X(P, 4).family)[0] == True
    assert is_centred(Family(P, [0, 1, 2, 4, 3, 5, 6]))[0] == True

def test_centred_on_chain():
    for n in range(1, 6):
        C = ChainPoset(n)

        for mask in range(1 << (n + 1)):
            I = list(bitsOf(mask))
            assert is_centred(Family(C, I))[0] == is_centred_rank_set(I, n)

def test_erdos_bound():
    P = BooleanLattice(3)

    report = erdos_bound_check(P, 2)
    assert report and report.details['max_zero'] == 3
    assert erdos_bound_check(P, 3).details['max_zero'] == 6

    for n in range(1, 6):
        for k in range(2, n + 2):
            assert erdos_bound_check(BooleanLattice(n), k)

if __name__ == "__main__":
    test_orderings()
    test_centred_rank_sets()
    test_breakpoints()
    test_build_X()
    test_mk_table()
    test_mk_matches_centred_prefix()
    test_mk_tie_order()
    test_centred_families_attain_mk()
    test_mk_aliases()
    test_convexity()
    test_is_centred()
    test_centred_on_chain()
    test_erdos_bound()
