from chainmin.misc import *
from chainmin.core import GradedPoset, Family
from chainmin.calc.chains import (
    chains_with_ranks,
    maximal_chain_count,
    rank_chain_count,
    level_union_chains,
    count_chains
)
from chainmin.calc.centred import MkTable, mk_table, breakpoints, is_centred_rank_set

from collections import Counter
from scipy.stats import norm, chisquare


CHAIN_LIMIT = 50000


def enumerate_maximal_chains(poset:GradedPoset, limit:int = CHAIN_LIMIT) -> Iterator[CHAIN]:
    """
    Every maximal chain, element of rank i at position i, each exactly once.

    Raises:
        ResourceLimitError: when the poset has more than `limit` maximal chains.
    """
    total = maximal_chain_count(poset)

    if total > limit:
        raise ResourceLimitError(" \
            [ERROR] enumerate_maximal_chains: %d maximal chains exceed the bound %d. \
            "%(total, limit)
        )

    return chains_with_ranks(poset, range(poset.n + 1))


def _up_counts(poset:GradedPoset) -> Dict[int, int]:
    """
    Number of saturated chains from each element to the top level.
    """
    key = ('up_counts',)

    if key not in poset._cache:
        u = {}

        for i in range(poset.n, -1, -1):
            for x in poset.level(i):
                u[x] = 1 if i == poset.n else sum(u[y] for y in poset.covers(x))

        poset._cache[key] = u

    return poset._cache[key]


def _weighted_pick(options:Sequence[int], weights:Dict[int, int], rng:random.Random) -> int:
    r = rng.randrange(sum(weights[y] for y in options))

    for y in options:
        r -= weights[y]

        if r < 0:
            return y

    return options[-1]


def sample_maximal_chain(poset:GradedPoset, seed:Union[int, random.Random, None] = None) -> CHAIN:
    """
    A uniformly random maximal chain.

    Boolean lattices draw a random permutation; other posets walk upward,
    choosing each cover with probability proportional to the number of
    saturated chains above it, which is exactly uniform.
    """
    rng = rngOf(seed)
    chain = poset._sample_chain(rng)

    if chain is not None:
        return chain

    u = _up_counts(poset)
    chain = [_weighted_pick(poset.level(0), u, rng)]

    for _ in range(poset.n):
        chain.append(_weighted_pick(poset.covers(chain[-1]), u, rng))

    return tuple(chain)


def lym_identity_check(poset:GradedPoset) -> PropertyReport:
    """
    Pr(x in C) |P_{r(x)}| = 1 for every element x and a uniform maximal chain C.
    """
    hits = Counter()
    total = 0

    for C in enumerate_maximal_chains(poset):
        total += 1
        hits.update(C)

    for x in poset:
        if hits[x] * poset.level_size(poset.rank(x)) != total:
            return PropertyReport('LYM identity', False, (x, Fraction(hits[x], total)))

    return PropertyReport('LYM identity', True, details={'chains': total})


def ktuple_identity_check(poset:GradedPoset, k:int) -> PropertyReport:
    """
    Pr(T inside C) times the number of chains with rank set r(T) is 1 for
    every k-chain T.
    """
    hits = Counter()
    total = 0

    for C in enumerate_maximal_chains(poset):
        total += 1
        hits.update(itertools.combinations(C, k))

    for r in itertools.combinations(range(poset.n + 1), k):
        seen = [T for T in hits if tuple(poset.rank(x) for x in T) == r]
        rcc = rank_chain_count(poset, r, 'count')

        if len(seen) != rcc:
            return PropertyReport('k-tuple identity', False, ('unreached', r, len(seen), rcc))

        for T in seen:
            if hits[T] * rcc != total:
                return PropertyReport('k-tuple identity', False, (T, Fraction(hits[T], total)))

    return PropertyReport('k-tuple identity', True, details={'chains': total, 'k': k})


def sampler_uniformity(
    poset:GradedPoset,
    samples:int,
    seed:Union[int, random.Random, None] = 0,
    alpha:float = 1e-3
) -> PropertyReport:
    """
    Chi-square goodness of fit of sampled maximal chains against the uniform law.
    """
    chains = list(enumerate_maximal_chains(poset))
    index = {C: t for t, C in enumerate(chains)}
    observed = np.zeros(len(chains), dtype=np.int64)
    rng = rngOf(seed)

    for _ in range(samples):
        observed[index[sample_maximal_chain(poset, rng)]] += 1

    if len(chains) == 1:
        return PropertyReport('sampler uniformity', True, details={'p_value': 1.0, 'chains': 1})

    p_value = float(chisquare(observed).pvalue)

    return PropertyReport(
        'sampler uniformity', p_value >= alpha, None if p_value >= alpha else observed.tolist(),
        {'p_value': p_value, 'chains': len(chains), 'samples': samples}
    )


class ChainFunctional:
    def __init__(self, poset:GradedPoset, k:int, table:Optional[MkTable] = None) -> None:
        """
        f(X) = m_k(sum of |P_{r(x)}| over x in X) - c_k(union of P_{r(x)}).

        Args:
            poset (GradedPoset): the poset.
            k (int): chain size.
            table (MkTable, optional): precomputed m_k table.
        """
        self.poset = poset
        self.k = k
        self.table = table or mk_table(poset, k)

    def size(self, X:Iterable[int]) -> int:
        return sum(self.poset.level_size(self.poset.rank(x)) for x in X)

    def ck_term(self, X:Iterable[int]) -> int:
        return level_union_chains(self.poset, sorted(set(self.poset.rank(x) for x in X)), self.k)

    def f(self, X:Iterable[int]) -> int:
        X = list(X)

        if not self.poset.is_chain(X):
            raise ValueError(" \
                [ERROR] ChainFunctional: `%r` is not a chain. \
                "%(X,)
            )

        return self.table[self.size(X)] - self.ck_term(X)

    __call__ = f


def f_value(functional:ChainFunctional, X:Iterable[int]) -> int:
    return functional.f(X)


class IntegerDistribution:
    def __init__(self, probs:Dict[int, RATIONAL]) -> None:
        """
        A finitely supported distribution on the integers with exact rational masses.

        Args:
            probs (dict): value -> probability; zero masses are dropped.
        """
        probs = {int(v): Fraction(p) for v, p in probs.items()}

        if any(p < 0 for p in probs.values()) or sum(probs.values()) != 1:
            raise ValueError(" \
                [ERROR] IntegerDistribution: masses must be nonnegative and sum to 1. \
            ")

        self.probs = {v: p for v, p in sorted(probs.items()) if p > 0}

    @classmethod
    def empirical(cls, values:Iterable[int]) -> 'IntegerDistribution':
        """
        Law of a uniformly chosen entry of `values`, repeats counted.
        """
        return cls.from_counts(Counter(values))

    @classmethod
    def from_counts(cls, counts:Dict[int, int]) -> 'IntegerDistribution':
        total = sum(counts.values())

        return cls({v: Fraction(c, total) for v, c in counts.items()})

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(self.probs)

    def mean(self) -> Fraction:
        return sum((v * p for v, p in self.probs.items()), Fraction(0))

    def expect(self, fn:Callable[[int], RATIONAL]) -> Fraction:
        return sum((fn(v) * p for v, p in self.probs.items()), Fraction(0))


@dataclass
class JensenResult:
    holds: bool
    strict: bool
    lhs: Fraction
    rhs: Fraction
    equality_window: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def discrete_jensen_check(f_values:Sequence[RATIONAL], dist:IntegerDistribution, start:int = 0) -> JensenResult:
    """
    Check E[f(X)] >= f(E[X]) exactly for a convex f on the integers.

    Args:
        f_values (sequence): f(start), f(start+1), ...
        dist (IntegerDistribution): law of X, supported inside the table
            with an integral mean.
        start (int): the first argument of the table.

    Returns:
        result (JensenResult): in the equality case `equality_window` holds
            (c, d), the extremes of the support, on which Delta f is constant.
    """
    f = [Fraction(v) for v in f_values]
    d = [f[t] - f[t - 1] for t in range(1, len(f))]

    if any(a > b for a, b in zip(d, d[1:])):
        raise ValueError(" \
            [ERROR] discrete_jensen_check: f is not convex on its table. \
        ")

    lo, hi = dist.support[0], dist.support[-1]

    if lo < start or hi >= start + len(f):
        raise ValueError(" \
            [ERROR] discrete_jensen_check: support [%d, %d] leaves the table [%d, %d]. \
            "%(lo, hi, start, start + len(f) - 1)
        )

    mean = dist.mean()

    if mean.denominator != 1:
        raise ValueError(" \
            [ERROR] discrete_jensen_check: E[X] = %s is not an integer. \
            "%(fmtRational(mean))
        )

    lhs = dist.expect(lambda v: f[v - start])
    rhs = f[int(mean) - start]
    flat = len(set(d[lo - start:hi - start])) <= 1

    if (lhs == rhs) != flat:
        raise PropertyViolation(
            "[ERROR] discrete_jensen_check: equality %s but Delta f %s constant on [%d, %d]"%(
                lhs == rhs, 'is' if flat else 'is not', lo + 1, hi
            ),
            (lo, hi)
        )

    return JensenResult(lhs >= rhs, lhs > rhs, lhs, rhs, (lo, hi) if lhs == rhs else None)


@dataclass
class ExpectationReport:
    mode: str
    k: int
    chains: int
    size: int
    ck: int
    mk: int
    E_f: Any
    E_mk_term: Any
    E_ck_term: Any
    E_size: Any
    bands: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    jensen: Optional[JensenResult] = None

    @property
    def holds(self) -> bool:
        return self.ck >= self.mk

    def record(self) -> dict:
        """
        JSON-friendly dict; exact rationals as `num/den` strings.
        """
        def conv(v):
            return fmtRational(v) if isinstance(v, Fraction) else v

        res = {
            'mode': self.mode, 'k': self.k, 'chains': self.chains, 'size': self.size,
            'c_k': self.ck, 'm_k': self.mk, 'E_f': conv(self.E_f),
            'E_mk_term': conv(self.E_mk_term), 'E_ck_term': conv(self.E_ck_term),
            'E_size': conv(self.E_size), 'holds': self.holds
        }

        if self.bands:
            res['bands'] = {key: list(v) for key, v in self.bands.items()}

        if self.jensen is not None:
            res['jensen_strict'] = self.jensen.strict

        return res


def expectation_report(
    A:Family,
    k:int,
    mode:str = 'auto',
    samples:int = 10000,
    seed:Union[int, random.Random, None] = 0,
    table:Optional[MkTable] = None,
    level:float = 0.999
) -> ExpectationReport:
    """
    Evaluate the random-chain argument for c_k(A) >= m_k(|A|).

    For a uniform maximal chain C and X = A n C, the exact mode averages over
    all maximal chains and asserts: E[c_k-term] = c_k(A), E[size] = |A|,
    E[f(X)] <= 0, and m_k(|A|) <= E[m_k(size)] by discrete Jensen. The Monte
    Carlo mode estimates the same means from `samples` seeded chains and
    reports normal bands at confidence `level`; it asserts nothing.

    Args:
        A (Family): the family.
        k (int): chain size.
        mode (str): 'exact', 'mc', or 'auto' (exact below the chain bound).

    Raises:
        PropertyViolation: when an exact-mode assertion fails.
    """
    P = A.poset
    F = ChainFunctional(P, k, table)

    if mode == 'auto':
        if maximal_chain_count(P) <= CHAIN_LIMIT:
            mode = 'exact'
        else:
            warnings.warn(" \
                [WARN] expectation_report: too many maximal chains, falling back to Monte Carlo with %d samples. \
                "%(samples)
            )
            mode = 'mc'

    if mode == 'exact':
        chains = enumerate_maximal_chains(P)
    elif mode == 'mc':
        rng = rngOf(seed)
        chains = (sample_maximal_chain(P, rng) for _ in range(samples))
    else:
        raise ValueError(" \
            [ERROR] expectation_report: unknown mode `%s`. \
            "%(mode)
        )

    sizes, mks, cks = [], [], []

    for C in chains:
        X = [x for x in C if x in A]
        sizes.append(F.size(X))
        mks.append(F.table[sizes[-1]])
        cks.append(F.ck_term(X))

    total = len(sizes)
    ck, mk = count_chains(A, k), F.table[len(A)]

    if mode == 'mc':
        z = float(norm.ppf(0.5 + level / 2))

        def band(values):
            v = np.asarray(values, dtype=float)
            half = z * v.std(ddof=1) / np.sqrt(len(v)) if len(v) > 1 else 0.0

            return (float(v.mean() - half), float(v.mean() + half))

        fs = [m - c for m, c in zip(mks, cks)]

        return ExpectationReport(
            'mc', k, total, len(A), ck, mk,
            float(np.mean(fs)), float(np.mean(mks)), float(np.mean(cks)), float(np.mean(sizes)),
            {'E_f': band(fs), 'E_mk_term': band(mks), 'E_ck_term': band(cks), 'E_size': band(sizes)}
        )

    E_size = Fraction(sum(sizes), total)
    E_mk = Fraction(sum(mks), total)
    E_ck = Fraction(sum(cks), total)
    E_f = E_mk - E_ck

    jensen = discrete_jensen_check(F.table.values, IntegerDistribution.empirical(sizes)) if total else None

    failures = [
        name for name, ok in (
            ('E[c_k-term] = c_k(A)', E_ck == ck),
            ('E[size] = |A|', E_size == len(A)),
            ('E[f] <= 0', E_f <= 0),
            ('Jensen', jensen is None or jensen.holds),
            ('c_k(A) >= m_k(|A|)', ck >= mk)
        ) if not ok
    ]

    if failures:
        raise PropertyViolation(
            "[ERROR] expectation_report: %s failed for family %r"%(', '.join(failures), sorted(A.members)),
            sorted(A.members)
        )

    return ExpectationReport('exact', k, total, len(A), ck, mk, E_f, E_mk, E_ck, E_size, jensen=jensen)


def equality_case_check(A:Family, k:int, table:Optional[MkTable] = None) -> PropertyReport:
    """
    When c_k(A) = m_k(|A|) > 0, every maximal chain C has r(A n C) centred
    with |A n C| in {l, l+1}, l = max{l : a_l <= |A|}.
    """
    P = A.poset
    table = table or mk_table(P, k)
    ck, mk = count_chains(A, k), table[len(A)]

    if not (ck == mk > 0):
        return PropertyReport('equality case', True, details={'applicable': False, 'c_k': ck, 'm_k': mk})

    ell = max(t for t, b in enumerate(breakpoints(P)) if b <= len(A))

    for C in enumerate_maximal_chains(P):
        X = [x for x in C if x in A]
        R = [P.rank(x) for x in X]

        if not is_centred_rank_set(R, P.n) or len(X) not in (ell, ell + 1):
            return PropertyReport('equality case', False, (C, tuple(R)), {'ell': ell})

    return PropertyReport('equality case', True, details={'applicable': True, 'ell': ell})
