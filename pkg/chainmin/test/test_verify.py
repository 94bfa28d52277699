from chainmin.misc import *
from chainmin.core import Family, BooleanLattice, SubspaceLattice, ChainPoset
from chainmin.calc import count_chains, mk_table
from chainmin.verify import *

import json
import pytest


def test_family_sweep():
    P = BooleanLattice(3)
    sweep = FamilySweep(P, 3)

    assert len(sweep) == 256
    assert sweep.count(2, range(8)) == 19
    assert sweep.count(3, range(8)) == 18
    assert sweep.count(1, [1, 3]) == 2
    assert sweep.members(sweep.mask_of([7, 1, 3])) == (1, 3, 7)
    assert sweep.minimize(2, 4)[0] == 2
    assert sweep.minimize(2, 3)[0] == 0

    for mask in range(0, 256, 37):
        members = sweep.members(mask)
        assert sweep.counts(2)[mask] == count_chains(Family(P, members), 2)

    with pytest.raises(ResourceLimitError):
        FamilySweep(BooleanLattice(5), 2)

    with pytest.raises(ValueError):
        FamilySweep(P, 0)

def test_exhaustive_minimize():
    P = BooleanLattice(3)

    res = exhaustive_minimize(P, 2, 4)
    assert res.min_ck == 2
    assert res.all_minimizers_centred
    assert res.minimizer_count == len(res.minimizers)
    assert all(count_chains(Family(P, m), 2) == 2 for m in res.minimizers)

    assert exhaustive_minimize(P, 2, 3).min_ck == 0
    assert exhaustive_minimize(P, 2, 0).min_ck == 0
    assert exhaustive_minimize(BooleanLattice(4), 2, 7).min_ck == 3

    rec = res.record()
    assert rec['min'] == 2 and rec['all_centred'] == True

    with pytest.raises(ValueError):
        exhaustive_minimize(P, 2, 9)

    with pytest.raises(ValueError):
        exhaustive_minimize(P, 0, 2)

def test_exhaustive_combinations():
    P = BooleanLattice(5)

    assert exhaustive_minimize(P, 2, 2).min_ck == 0
    assert exhaustive_minimize(P, 2, 31).min_ck == 180

    with pytest.raises(ResourceLimitError):
        exhaustive_minimize(P, 2, 3, budget=10)

def test_minimizer_warning():
    res = exhaustive_minimize(BooleanLattice(4), 2, 1)

    assert res.minimizer_count == 16
    assert len(res.minimizers) == 16

    with pytest.warns(UserWarning):
        res = exhaustive_minimize(BooleanLattice(4), 1, 2)

    assert res.minimizer_count == 120
    assert len(res.minimizers) == MINIMIZER_MAX

def test_suite():
    report = verify_kleitman_suite(BooleanLattice(3), [1, 2, 3])

    assert report.passed and bool(report)
    assert len(report.rows()) == 27
    assert (2, 4, 2, 2) == report.rows()[13][:4]
    assert report.rows()[13][5] == 1
    assert report.record()['k'] == [1, 2, 3]

    assert verify_kleitman_suite(SubspaceLattice(2, 2), [2, 3])
    assert verify_kleitman_suite(ChainPoset(3), [2])

    with pytest.raises(ValueError):
        verify_kleitman_suite(BooleanLattice(2), [0, 2])

def test_suite_sweeps():
    for n in range(1, 5):
        P = BooleanLattice(n)
        ks = range(2, n + 2)
        report = verify_kleitman_suite(P, ks)

        assert report and not report.counterexamples
        assert len(report.rows()) == len(ks) * (len(P) + 1)

    for P in [SubspaceLattice(2, 2), SubspaceLattice(3, 2), SubspaceLattice(2, 3)]:
        report = verify_kleitman_suite(P, [2, 3, 4])

        assert report
        assert len(report.rows()) == 3 * (len(P) + 1)
        assert all(row[2] == row[3] for row in report.rows())

def test_minimize_aliases():
    P = BooleanLattice(3)

    assert exhaustive_minimize(P, chain_size=2, size=4).min_ck == 2
    assert probe_minimize(P, chain_size=2, size=4, strategy='exhaustive').best_ck == 2
    assert probe_minimize(P, 2, 4, steps=50, seed=1).budget == 50

    with pytest.raises(ValueError):
        exhaustive_minimize(P, 2, 4, size=4)

    with pytest.raises(ValueError):
        probe_minimize(P, 2, 4, budget=10, steps=10)

def test_counterexample_roundtrip(tmp_path):
    P = BooleanLattice(3)
    path = str(tmp_path / "cx.json")

    Counterexample(P.descriptor(), [1, 3], 2, 1, 0, seed=4, note='manual').save(path)

    with open(path, encoding='utf-8') as f:
        assert json.load(f)['counts'] == {'c_k': 1, 'm_k': 0}

    cx = replay_counterexample(path)
    assert (cx.ck, cx.mk, cx.seed, cx.note) == (1, 0, 4, 'manual')
    assert replay_counterexample(cx.record()).members == [1, 3]

    with pytest.raises(ValueError):
        replay_counterexample({'poset': 'boolean:3', 'k': 2})

def test_erdos_katona():
    report = erdos_katona_check(3)

    assert report
    assert report.details['values'] == {0: 0, 1: 2, 2: 4, 3: 6}
    assert report.details['exhaustive'] == True

    assert erdos_katona_check(4)
    assert erdos_katona_check(6).details['exhaustive'] == False
    assert erdos_katona_check(7, exhaustive=False)

@pytest.mark.parametrize("strategy", ['hill_climb', 'anneal'])
def test_probe(strategy):
    P = BooleanLattice(4)
    probe = probe_minimize(P, 2, 8, strategy, budget=3000, seed=7)

    assert probe.sound
    assert probe.best_ck >= probe.mk == mk_table(P, 2)[8]
    assert probe.best_ck <= probe.start_ck
    assert count_chains(Family(P, probe.best), 2) == probe.best_ck
    assert len(probe.best) == 8
    assert probe.steps == 3000
    assert probe.record()['counterexample'] is None

    again = probe_minimize(P, 2, 8, strategy, budget=3000, seed=7)
    assert again.best == probe.best

@pytest.mark.parametrize("n, k, a, mk", [(5, 3, 28, 168), (6, 2, 25, 20)])
def test_hill_climb_large(n, k, a, mk):
    P = BooleanLattice(n)
    search = probe_minimize(P, k, a, 'hill_climb', budget=20000, seed=11)

    assert search.mk == mk
    assert search.sound
    assert search.best_ck >= search.mk
    assert count_chains(Family(P, search.best), k) == search.best_ck
    assert search.record()['counterexample'] is None

def test_probe_edges():
    P = BooleanLattice(3)

    exact = probe_minimize(P, 2, 4, 'exhaustive')
    assert exact.best_ck == exact.mk == 2
    assert exact.steps == 70

    empty = probe_minimize(P, 2, 0, budget=100, seed=1)
    assert empty.best_ck == empty.start_ck == 0 and empty.steps == 0

    idle = probe_minimize(P, 3, 5, budget=0, seed=1)
    assert idle.best_ck == idle.start_ck and idle.steps == 0

    with pytest.raises(ValueError):
        probe_minimize(P, 2, 4, 'tabu')

    with pytest.raises(ValueError):
        probe_minimize(P, 2, 4, budget=-1)

if __name__ == "__main__":
    test_family_sweep()
    test_exhaustive_minimize()
    test_exhaustive_combinations()
    test_minimizer_warning()
    test_suite()
    test_suite_sweeps()
    test_minimize_aliases()
    test_erdos_katona()
    test_probe('hill_climb')
    test_probe('anneal')
    test_hill_climb_large(5, 3, 28, 168)
    test_hill_climb_large(6, 2, 25, 20)
    test_probe_edges()
