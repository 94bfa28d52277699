from chainmin.misc import *
from chainmin.core import BooleanLattice, SubspaceLattice, ChainPoset
from chainmin.calc.centred import mk_table
from chainmin.calc.compression import *

import pytest
from hypothesis import given, settings, strategies as st


F = Fraction

def test_rank_distribution():
    P = BooleanLattice(3)
    D = RankDistribution.from_counts(P, [0, 1, 2, 0])

    assert D.p == (0, F(1, 3), F(2, 3), 0)
    assert D.counts() == (0, 1, 2, 0)
    assert D.a == 3
    assert D.h() == 3
    assert D.record() == ["0/1", "1/3", "2/3", "0/1"]
    assert D.reversed().p == (0, F(2, 3), F(1, 3), 0)
    assert RankDistribution(P, ['0', '1/3', '2/3', '0']) == D
    assert RankDistribution.from_levels(P, (0, 3)).p == (1, 0, 0, 1)
    assert RankDistribution.random(P, seed=0, a=5).a == 5
    assert RankDistribution.random(P, seed=3) == RankDistribution.random(P, seed=3)

    with pytest.raises(ValueError):
        RankDistribution(P, [0, 0, 1])

    with pytest.raises(ValueError):
        RankDistribution(P, [0, F(1, 2), 0, 0])

    with pytest.raises(ValueError):
        RankDistribution(P, [2, 0, 0, 0])

    with pytest.raises(ValueError):
        RankDistribution.random(P, seed=0, a=9)

def test_w_k():
    P = BooleanLattice(3)

    assert w_k(RankDistribution.from_levels(P, (0, 3)), 2) == 1
    assert w_k(RankDistribution(P, [0, '1/3', '1/3', 0]), 2) == F(2, 3)
    assert w_k(RankDistribution.from_levels(P, range(4)), 2) == 19
    assert w_k(RankDistribution.from_counts(P, [0, 2, 1, 0]), 1) == 3

def test_sample_wk():
    P = BooleanLattice(3)
    D = RankDistribution(P, [0, '1/3', '1/3', 0])
    est = sample_wk(D, 2, 2000, seed=0, level=1 - 1e-9)

    assert w_k(D, 2) in est
    assert est.samples == 2000

    full = sample_wk(RankDistribution.from_levels(P, (1, 2)), 2, 20, seed=0)
    assert (full.low, full.mean, full.high) == (6.0, 6.0, 6.0)

def test_phi_step():
    P = BooleanLattice(3)
    step = phi_step(RankDistribution.from_levels(P, (0, 3)))

    assert (step.i, step.i_prime, step.reversed) == (0, 1, False)
    assert (step.delta, step.delta_prime) == (1, F(1, 3))
    assert step.after.p == (0, F(1, 3), 0, 1)
    assert not step.fixpoint and not step.terminal

    step = phi_step(step.after)
    assert step.reversed
    assert step.frame.p == (1, 0, F(1, 3), 0)
    assert step.after.p == (0, F(1, 3), F(1, 3), 0)

    step = phi_step(step.after)
    assert (step.i, step.i_prime) == (1, 2)
    assert step.terminal
    assert step.after.p == (0, 0, F(2, 3), 0)

    assert phi_step(step.after).fixpoint
    assert phi_step(RankDistribution(P, [0, 0, 0, 0])).fixpoint
    assert phi_step(RankDistribution.from_levels(P, range(4))).fixpoint
    assert phi_step(RankDistribution.from_levels(P, (1, 2))).fixpoint

    with pytest.raises(ValueError):
        phi_step(P)

    with pytest.raises(ValueError):
        phi_step(RankDistribution(BooleanLattice(2).without([3]), [1, 0]))

def test_claimed_form():
    P = BooleanLattice(3)

    assert claimed_form(RankDistribution(P, [0, 0, '2/3', 0])) == ('mu+', 1)
    assert claimed_form(RankDistribution(P, [0, '2/3', 0, 0])) == ('mu-', 1)
    assert claimed_form(RankDistribution(P, [0, 1, '1/3', 0])) == ('mu-', 2)
    assert claimed_form(RankDistribution.from_levels(P, range(4))) == ('mu+', 4)
    assert claimed_form(RankDistribution.from_levels(P, (0, 3))) == None

def test_trajectory():
    P = BooleanLattice(3)
    traj = compress_to_fixpoint(RankDistribution.from_levels(P, (0, 3)), 2)

    assert len(traj) == 3
    assert traj.w == [1, 1, F(2, 3), 0]
    assert traj.h == [6, 4, 2, 2]
    assert [s.reversed for s in traj.steps] == [False, True, False]
    assert traj.form == ('mu+', 1)
    assert traj.m_k == 0
    assert traj.endpoint.p == (0, 0, F(2, 3), 0)
    assert [r['strict'] for r in traj.strictness_map()] == [False, True, True]

    records = traj.records()
    assert len(records) == 4
    assert records[0]['w'] == "1/1" and records[0]['i'] is None
    assert records[2]['p'] == ["0/1", "1/3", "1/3", "0/1"]
    assert records[3]['delta'] == "1/3"

    still = compress_to_fixpoint(RankDistribution.from_levels(P, (1, 2)), 2)
    assert len(still) == 0 and still.endpoint == still.start and still.m_k == 6

def test_compression_sweep():
    for P in [BooleanLattice(4), SubspaceLattice(2, 3)]:
        for k in range(1, P.n + 2):
            table = mk_table(P, k)

            for I in itertools.product([0, 1], repeat=P.n + 1):
                traj = compress_to_fixpoint(RankDistribution(P, I), k, table)
                assert traj.w[-1] == table[traj.start.a]

@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=1, max_value=5))
def test_random_starts(seed, k):
    P = BooleanLattice(4)
    traj = compress_to_fixpoint(RankDistribution.random(P, seed), k)

    assert all(a >= b for a, b in zip(traj.w, traj.w[1:]))
    assert traj.endpoint.a == traj.start.a

def test_compression_acceptance():
    rng = random.Random(21)
    posets = [BooleanLattice(n) for n in range(1, 6)] + [SubspaceLattice(2, 3)]

    for P in posets:
        tables = {k: mk_table(P, k) for k in range(1, P.n + 2)}

        for k, table in tables.items():
            for I in itertools.product([0, 1], repeat=P.n + 1):
                traj = compress_to_fixpoint(RankDistribution(P, I), k, table)

                assert len(traj) <= traj.h[0] + P.n + 2
                assert traj.w[-1] == table[traj.start.a]

        for _ in range(100):
            k = rng.randint(1, P.n + 1)
            traj = compress_to_fixpoint(RankDistribution.random(P, rng), k, tables[k])

            assert all(a >= b for a, b in zip(traj.w, traj.w[1:]))
            assert traj.form is not None
            assert traj.endpoint.a == traj.start.a
            assert traj.m_k == tables[k][traj.start.a]

def test_wk_change_decomposition():
    P = BooleanLattice(3)

    D = RankDistribution.from_levels(P, (0, 3))
    change = wk_change_decomposition(D, phi_step(D), 2)
    assert (change.sum1, change.sum2, change.sum3) == (1, -1, 0)
    assert change.total == 0

    D = RankDistribution(P, [1, 0, '1/3', 0])
    change = wk_change_decomposition(D, phi_step(D), 2)
    assert (change.sum1, change.sum2) == (1, F(-2, 3))
    assert change.total == F(1, 3)

    fixed = RankDistribution.from_levels(P, (1, 2))
    assert wk_change_decomposition(fixed, phi_step(fixed), 2).total == 0

    with pytest.raises(ValueError):
        wk_change_decomposition(fixed, phi_step(D), 2)

    for k in range(1, 5):
        cur = RankDistribution.from_levels(P, (0, 2, 3))

        while True:
            step = phi_step(cur)

            if step.fixpoint:
                break

            assert wk_change_decomposition(cur, step, k).total == w_k(cur, k) - w_k(step.after, k)
            cur = step.after

def test_delta_ck_comparison():
    P = BooleanLattice(3)
    res = delta_ck_comparison(P, 2, 0, 1, (2,))

    assert (res.lhs, res.rhs) == (3, 2)
    assert res.strict and res.strict_expected
    assert res.sigma_J == (2,)

    B5 = BooleanLattice(5)
    res = delta_ck_comparison(B5, 3, 0, 3, (1, 4))
    assert res.sigma_J == (2, 4)
    assert res.lhs > res.rhs

    mirror = delta_ck_comparison(B5, 2, 1, 4, (2,))
    assert not mirror.strict_expected

    assert not delta_ck_comparison(ChainPoset(3), 2, 0, 1, (2,)).strict

    step = phi_step(RankDistribution.from_levels(P, (0, 3)))
    res = delta_ck_comparison(P, 2, 0, 1, (2,), step=step)
    assert (res.lhs, res.rhs) == (3, 2)

    with pytest.raises(ValueError):
        delta_ck_comparison(P, 2, 0, 2, (1,), step=step)

    with pytest.raises(ValueError):
        delta_ck_comparison(P, 2, 0, 1, (2,), step=phi_step(RankDistribution.from_levels(P, (1, 2))))

    with pytest.raises(ValueError):
        delta_ck_comparison(P, 2, 0, 1, (3,))

    with pytest.raises(ValueError):
        delta_ck_comparison(B5, 3, 1, 2, (2, 3))

    with pytest.raises(ValueError):
        delta_ck_comparison(P, 2, 1, 3, (2,))

def test_lemma_main_sweep():
    P = BooleanLattice(3)

    assert lemma_main_sweep(P, 1)

    report = lemma_main_sweep(P, 2, compress=True)
    assert report
    assert report.details['rank_sets'] == 16
    assert (0, 3) in report.details['flat_first_step']

    for k in range(2, 6):
        assert lemma_main_sweep(BooleanLattice(4), k)

    for n in range(2, 9):
        for k in (2, 3, 4):
            report = lemma_main_sweep(BooleanLattice(n), k)

            assert report
            assert report.details['rank_sets'] == 1 << (n + 1)

    assert lemma_main_sweep(SubspaceLattice(2, 3), 2, compress=True)
    assert lemma_main_sweep(ChainPoset(3), 2)

if __name__ == "__main__":
    test_rank_distribution()
    test_w_k()
    test_sample_wk()
    test_phi_step()
    test_claimed_form()
    test_trajectory()
    test_compression_sweep()
    test_random_starts()
    test_compression_acceptance()
    test_wk_change_decomposition()
    test_delta_ck_comparison()
    test_lemma_main_sweep()
