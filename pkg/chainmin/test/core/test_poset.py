from chainmin.misc import *
from chainmin.core._poset import GradedPoset, ExplicitPoset, ChainPoset
from chainmin.core.lattice import BooleanLattice

import pytest


def diamond():
    return ExplicitPoset(['0', 'a', 'b', '1'], [('0', 'a'), ('0', 'b'), ('a', '1'), ('b', '1')])

def test_boolean_structure():
    P = BooleanLattice(3)

    assert len(P) == 8
    assert P.n == 3
    assert P.level_sizes() == (1, 3, 3, 1)
    assert P.level(1) == (1, 2, 4)
    assert P.level(4) == ()
    assert P.rank(5) == 2
    assert P.linear_extension() == (0, 1, 2, 4, 3, 5, 6, 7)
    assert P.position(4) == 3

def test_order_queries():
    P = BooleanLattice(3)

    assert P.less(1, 3) == True
    assert P.less(1, 6) == False
    assert P.less(3, 3) == False
    assert P.leq(3, 3) == True
    assert P.comparable(7, 2) == True
    assert P.down(3) == (0, 1, 2)
    assert P.up(6) == (7,)
    assert P.covers(1) == (3, 5)
    assert P.is_chain([7, 0, 1, 3]) == True
    assert P.is_chain([1, 2]) == False
    assert P.validate()
    assert P.validate().details['height'] == 4

def test_c2_prime():
    P = BooleanLattice(4)

    assert P.c2_prime(1, 3) == 3
    assert P.c2_prime(1, 3, method='count') == 3
    assert P.c2_prime(3, 1) == P.c2_prime(3, 1, method='count') == 3
    assert P.c2_prime(0, 4) == 1

    with pytest.raises(ValueError):
        P.c2_prime(2, 2)

    with pytest.raises(ValueError):
        P.c2_prime(0, 5)

    with pytest.raises(ValueError):
        P.c2_prime(0, 1, method='guess')

def test_explicit():
    D = diamond()

    assert D.n == 2
    assert D.level_sizes() == (1, 2, 1)
    assert D.less(D.index('0'), D.index('1')) == True
    assert D.validate()
    assert D.c2_prime(0, 1) == 2
    assert D.c2_prime(1, 2) == 1

    E = ExplicitPoset(elements=['x', 'y'], order=[('x', 'y')])
    assert E.level_sizes() == (1, 1)

    with pytest.raises(ValueError):
        ExplicitPoset(['x', 'y'], [('x', 'y'), ('y', 'x')])

    with pytest.raises(ValueError):
        ExplicitPoset(['x', 'y'], [('x', 'z')])

    with pytest.raises(ValueError):
        ExplicitPoset(['x', 'x'])

    with pytest.raises(ValueError):
        D.index('2')

def test_validate_gap():
    P = ExplicitPoset(['a', 'b', 'c', 'd'], [('a', 'b'), ('b', 'c'), ('d', 'c')])
    report = P.validate()

    assert not report
    assert report.witness[0] == 'gap'

def test_without():
    Q = BooleanLattice(2).without([3])

    assert isinstance(Q, ExplicitPoset)
    assert Q.n == 1
    assert Q.level_sizes() == (1, 2)
    assert Q.validate()

def test_chain_poset():
    C = ChainPoset(3)

    assert len(C) == 4
    assert C.level_sizes() == (1, 1, 1, 1)
    assert C.c2_prime(0, 3) == 1
    assert C.is_chain(range(4))
    assert C.descriptor() == {'type': 'chain', 'n': 3}
    assert ChainPoset(dim=2).n == 2

    with pytest.raises(ValueError):
        ChainPoset(-1)

def test_resource_guards():
    assert BooleanLattice(20).level_size(10) == 184756

    with pytest.raises(ResourceLimitError):
        len(BooleanLattice(17))

    with pytest.raises(ResourceLimitError):
        BooleanLattice(13).less(0, 1)

if __name__ == "__main__":
    test_boolean_structure()
    test_order_queries()
    test_c2_prime()
    test_explicit()
    test_validate_gap()
    test_without()
    test_chain_poset()
    test_resource_guards()
