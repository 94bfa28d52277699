from chainmin.misc import *
from chainmin.core import (
    BooleanLattice,
    SubspaceLattice,
    ChainPoset,
    ExplicitPoset,
    boolean_c2_prime,
    gaussian_binomial,
    subspace_c2_prime,
    enumerate_subspaces,
    poset_from_descriptor
)

import pytest


def test_boolean_c2_prime():
    assert boolean_c2_prime(4, 1, 3) == 3
    assert boolean_c2_prime(4, 3, 1) == 3
    assert boolean_c2_prime(5, 0, 5) == 1

    with pytest.raises(ValueError):
        boolean_c2_prime(4, 2, 2)

    with pytest.raises(ValueError):
        boolean_c2_prime(4, 1, 5)

def test_gaussian_binomial():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(2, 1, 4) == 5
    assert gaussian_binomial(2, 3, 2) == 0
    assert gaussian_binomial(6, 0, 3) == 1

def test_subspace_c2_prime():
    assert subspace_c2_prime(2, 3, 1, 2) == 3
    assert subspace_c2_prime(2, 3, 2, 1) == 3
    assert subspace_c2_prime(2, 3, 0, 1) == 7

    with pytest.raises(ValueError):
        subspace_c2_prime(6, 3, 0, 1)

def test_boolean_lattice():
    P = BooleanLattice(dim=3)

    assert P.n == 3
    assert P.subset(5) == frozenset({1, 3})
    assert P.descriptor() == {'type': 'boolean', 'n': 3}

    chain = P._sample_chain(random.Random(1))
    assert len(chain) == 4 and P.is_chain(chain)

    with pytest.raises(ValueError):
        BooleanLattice(n=3, dim=3)

    with pytest.raises(ValueError):
        BooleanLattice(-1)

def test_subspace_lattice():
    P = SubspaceLattice(2, 3)

    assert len(P) == 16
    assert P.level_sizes() == (1, 7, 7, 1)
    assert P.validate()
    assert P.c2_prime(1, 2, method='count') == 3
    assert P.c2_prime(2, 1, method='count') == 3
    assert P.subspace_of([[1, 0, 0], [1, 1, 0]]) == P.index(((1, 0, 0), (0, 1, 0)))
    assert P.basis(0) == ()

    Q = SubspaceLattice(field_size=4, dim=2)
    assert len(Q) == 7
    assert Q.level_sizes() == (1, 5, 1)
    assert Q.validate()

    with pytest.raises(ValueError):
        SubspaceLattice(6, 2)

    with pytest.raises(ResourceLimitError):
        len(SubspaceLattice(2, 15))

def test_enumerate_subspaces():
    assert len(enumerate_subspaces(3, 2)) == 6
    assert len(enumerate_subspaces(2, 2)) == 5

def test_descriptor():
    assert poset_from_descriptor('boolean:4').level_sizes() == (1, 4, 6, 4, 1)
    assert poset_from_descriptor('subspace:2,3').level_sizes() == (1, 7, 7, 1)
    assert len(poset_from_descriptor('chain:2')) == 3
    assert poset_from_descriptor({'type': 'Boolean', 'n': 2}).n == 2

    D = ExplicitPoset(['0', 'a', 'b', '1'], [('0', 'a'), ('0', 'b'), ('a', '1'), ('b', '1')])
    E = poset_from_descriptor(D.descriptor())
    assert E.level_sizes() == D.level_sizes()
    assert E.less(E.index('a'), E.index('1'))

    for bad in ['boolean', 'torus:3', 'subspace:2', 'boolean:x', {'n': 3}, {'type': 'boolean'}]:
        with pytest.raises(ValueError):
            poset_from_descriptor(bad)

if __name__ == "__main__":
    test_boolean_c2_prime()
    test_gaussian_binomial()
    test_subspace_c2_prime()
    test_boolean_lattice()
    test_subspace_lattice()
    test_enumerate_subspaces()
    test_descriptor()
