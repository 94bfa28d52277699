import inspect
import random
import warnings
import itertools
import functools

import numpy as np
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union
from math import floor, ceil
from scipy.special import comb

RATIONAL = Union[int, Fraction]
RANKSET = Tuple[int, ...]
CHAIN = Tuple[int, ...]


class ResourceLimitError(ValueError):
    """
    Raised when a resource guard refuses an enumeration (too many families,
    chains, or subspaces to list exhaustively).
    """


class PropertyViolation(ValueError):
    def __init__(self, message:str, witness:Any = None) -> None:
        """
        Raised when an identity or inequality that must hold fails.

        Args:
            message (str): description of the violated property.
            witness (Any): data reproducing the failure.
        """
        super().__init__(message)
        self.witness = witness


@dataclass
class PropertyReport:
    name: str
    passed: bool
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def expect(self) -> 'PropertyReport':
        """
        Return the report itself, or raise `PropertyViolation` if it failed.
        """
        if not self.passed:
            raise PropertyViolation(
                "[ERROR] %s: property does not hold, witness=%r"%(self.name, self.witness),
                self.witness
            )

        return self


def isInteger(n:Any) -> bool:
    return isinstance(n, (int, np.integer)) and not isinstance(n, (bool, np.bool_))


def isRational(x:Any) -> bool:
    return isInteger(x) or isinstance(x, Fraction)


def isRankSet(s:Any, n:int = None) -> bool:
    if not isinstance(s, (tuple, list, set, frozenset, range)):
        return False

    if not all(isInteger(i) for i in s):
        return False

    if any(i < 0 for i in s):
        return False

    if n != None and any(i > n for i in s):
        return False

    return True


def toRankSet(s:Iterable[int], n:int = None, tag:str = 'toRankSet') -> RANKSET:
    """
    Normalize an iterable of ranks into a strictly increasing tuple.

    Args:
        s (iterable): ranks.
        n (int, optional): the largest admissible rank.
        tag (str): name reported in error messages.
    """
    s = tuple(s) if not isinstance(s, (set, frozenset)) else tuple(sorted(s))

    if not isRankSet(s, n):
        raise ValueError(" \
            [ERROR] %s: `%r` is not a set of ranks in [0, %s]. \
            "%(tag, s, n)
        )

    return tuple(sorted(set(int(i) for i in s)))


def binom(n:int, k:int) -> int:
    """
    Exact binomial coefficient, zero outside 0 <= k <= n.
    """
    if k < 0 or n < 0 or k > n:
        return 0

    return int(comb(n, k, exact=True))


def fmtRational(x:RATIONAL) -> str:
    """
    Serialize an exact rational as `num/den`.
    """
    x = Fraction(x)

    return "%d/%d"%(x.numerator, x.denominator)


def parseRational(s:Union[str, int, Fraction]) -> Fraction:
    if isinstance(s, str):
        return Fraction(s.strip())

    return Fraction(s)


def popcount(mask:int) -> int:
    return bin(mask).count('1')


def bitsOf(mask:int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def maskOf(indices:Iterable[int]) -> int:
    res = 0

    for i in indices:
        res |= 1 << int(i)

    return res


def inspect_args(func, aliases, error_tag, *args, **kwargs):
    """
    Resolve positional arguments, aliases and defaults of `func` into one keyword dict.

    Args:
        func (Callable): the decorated function.
        aliases (dict): maps an alternative keyword to the parameter name.
        error_tag (str): name reported in error messages.
    """
    params = [
        p for p in inspect.signature(func).parameters.values()
        if p.kind in (p.POSITIONAL_OR_KEYWORD, p.KEYWORD_ONLY) and p.name != 'self'
    ]

    for name, target in aliases.items():
        if name not in kwargs:
            continue

        if target in kwargs:
            raise ValueError(" \
                [ERROR] %s: you can't pass the both `%s` and `%s` arguments. \
                "%(error_tag, name, target)
            )

        kwargs[target] = kwargs.pop(name)

    for i, p in enumerate(params):
        if p.name in kwargs:
            if len(args) > i:
                raise ValueError(" \
                    [ERROR] %s: same flag used two times (`%s`). \
                    "%(error_tag, p.name)
                )

            continue

        if len(args) > i:
            kwargs[p.name] = args[i]
            continue

        if p.default is not inspect.Parameter.empty:
            kwargs[p.name] = p.default
            continue

        raise ValueError(" \
            [ERROR] %s: Argument `%s` is missing \
            "%(error_tag, p.name)
        )

    if len(args) > len(params):
        raise ValueError(" \
            [ERROR] %s: expected at most %d positional arguments. \
            "%(error_tag, len(params))
        )

    return kwargs


def alias(aliases):
    def decorator(func):
        @functools.wraps(func)
        def func_wrapper(*args, **kwargs):
            new_kwargs = inspect_args(func, aliases, func.__name__, *args, **kwargs)

            return func(**new_kwargs)
        return func_wrapper
    return decorator


def posetinit(aliases={}):
    def decorator(init):
        @functools.wraps(init)
        def func_wrapper(self, *args, **kwargs):
            poset_type = self.__class__.__name__
            setattr(self, 'poset_type', poset_type)

            new_kwargs = inspect_args(init, aliases, poset_type, *args, **kwargs)

            return init(self, **new_kwargs)
        return func_wrapper
    return decorator


def rngOf(seed:Union[int, random.Random, None]) -> random.Random:
    """
    Seeded generator from an integer seed, or `seed` itself if already one.
    """
    if isinstance(seed, random.Random):
        return seed

    if seed != None and not isInteger(seed):
        raise ValueError(" \
            [ERROR] rngOf: seed must be an integer, got %r. \
            "%(seed,)
        )

    return random.Random(seed)
