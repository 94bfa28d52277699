from chainmin.misc import *

import pytest


def test_integer():
    assert isInteger(3) == True
    assert isInteger(np.int32(1)) == True
    assert isInteger(3.0) == False
    assert isInteger(True) == False
    assert isRational(Fraction(1, 3)) == True
    assert isRational(0.5) == False

def test_rank_set():
    assert isRankSet((0, 2)) == True
    assert isRankSet([3, 1], n=3) == True
    assert isRankSet([4], n=3) == False
    assert isRankSet((-1,)) == False
    assert isRankSet(5) == False
    assert toRankSet([3, 1, 1]) == (1, 3)
    assert toRankSet({2, 0}) == (0, 2)

    with pytest.raises(ValueError):
        toRankSet([0, 5], n=4)

def test_binom():
    assert binom(4, 2) == 6
    assert binom(10, 0) == 1
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0
    assert binom(60, 30) == 118264581564861424

def test_rational_text():
    assert fmtRational(Fraction(2, 3)) == "2/3"
    assert fmtRational(4) == "4/1"
    assert parseRational("1/3") == Fraction(1, 3)
    assert parseRational(" 2 ") == 2
    assert parseRational(fmtRational(Fraction(-5, 7))) == Fraction(-5, 7)

def test_bits():
    assert popcount(0b10110) == 3
    assert list(bitsOf(0b10110)) == [1, 2, 4]
    assert list(bitsOf(0)) == []
    assert maskOf([0, 3]) == 9
    assert maskOf(bitsOf(1234567)) == 1234567

def test_rng():
    a, b = rngOf(7), rngOf(7)
    assert [a.random() for _ in range(3)] == [b.random() for _ in range(3)]
    assert rngOf(a) is a

    with pytest.raises(ValueError):
        rngOf(1.5)

def test_report():
    ok = PropertyReport('demo', True)
    bad = PropertyReport('demo', False, witness=(1, 2))

    assert bool(ok) and not bool(bad)
    assert ok.expect() is ok

    with pytest.raises(PropertyViolation) as e:
        bad.expect()

    assert e.value.witness == (1, 2)
    assert issubclass(ResourceLimitError, ValueError)

def test_alias():
    @alias({'arg_a':'a', 'arg_b':'b', 'arg_d':'d'})
    def foo(
        a=None,
        b=2,
        c='a',
        d='%',
        **kwargs
    ):
        return a, b, c, d

    assert foo(1, 2) == (1, 2, 'a', '%')
    assert foo(a=0, b=3, c='b') == (0, 3, 'b', '%')
    assert foo(0, arg_b=4, c='d') == (0, 4, 'd', '%')
    assert foo(arg_a=-1, arg_b=5, d='&') == (-1, 5, 'a', '&')
    assert foo(0) == (0, 2, 'a', '%')

    with pytest.raises(ValueError):
        foo(1, a=2)

    with pytest.raises(ValueError):
        foo(a=1, arg_a=2)

if __name__ == "__main__":
    test_integer()
    test_rank_set()
    test_binom()
    test_rational_text()
    test_bits()
    test_rng()
    test_report()
    test_alias()
