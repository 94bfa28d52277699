from chainmin.misc import *
from chainmin.core import GradedPoset, Family
from chainmin.calc.chains import rank_chain_count, level_union_chains, check_descending, chain_vector
from chainmin.calc.centred import orderings, mk_table, m_k, is_centred_rank_set, MkTable

from scipy.stats import norm


class RankDistribution:
    def __init__(self, poset:GradedPoset, p:Sequence[RATIONAL]) -> None:
        """
        Per-level inclusion probabilities p_0, ..., p_n with every expected
        level count p_i |P_i| a nonnegative integer.

        Args:
            poset (GradedPoset): the poset.
            p (sequence): exact rationals in [0, 1], one per rank.
        """
        p = tuple(parseRational(v) for v in p)

        if len(p) != poset.n + 1:
            raise ValueError(" \
                [ERROR] RankDistribution: expected %d probabilities, got %d. \
                "%(poset.n + 1, len(p))
            )

        for i, v in enumerate(p):
            if v < 0 or v > 1 or (v * poset.level_size(i)).denominator != 1:
                raise ValueError(" \
                    [ERROR] RankDistribution: p_%d = %s is not a multiple of 1/%d in [0, 1]. \
                    "%(i, fmtRational(v), poset.level_size(i))
                )

        self.poset = poset
        self.p = p

    @classmethod
    def from_levels(cls, poset:GradedPoset, I:Iterable[int]) -> 'RankDistribution':
        """
        Characteristic vector of the rank set `I`.
        """
        I = set(toRankSet(I, poset.n, 'RankDistribution.from_levels'))

        return cls(poset, [1 if i in I else 0 for i in range(poset.n + 1)])

    @classmethod
    def from_counts(cls, poset:GradedPoset, counts:Sequence[int]) -> 'RankDistribution':
        return cls(poset, [Fraction(c, poset.level_size(i)) for i, c in enumerate(counts)])

    @classmethod
    def random(
        cls,
        poset:GradedPoset,
        seed:Union[int, random.Random, None] = None,
        a:Optional[int] = None
    ) -> 'RankDistribution':
        """
        A random member: level counts of a uniform random family, of size `a`
        when given, of uniform random size per level otherwise.
        """
        rng = rngOf(seed)
        sizes = poset.level_sizes()

        if a is None:
            return cls.from_counts(poset, [rng.randint(0, s) for s in sizes])

        if a < 0 or a > sum(sizes):
            raise ValueError(" \
                [ERROR] RankDistribution.random: a must lie in [0, %d], got %d. \
                "%(sum(sizes), a)
            )

        cuts = np.cumsum(sizes)
        picks = rng.sample(range(int(cuts[-1])), a)
        counts = np.bincount(np.searchsorted(cuts, picks, side='right'), minlength=len(sizes))

        return cls.from_counts(poset, [int(c) for c in counts])

    def __getitem__(self, i:int) -> Fraction:
        return self.p[i]

    def __len__(self) -> int:
        return len(self.p)

    def __eq__(self, other:Any) -> bool:
        if not isinstance(other, RankDistribution):
            return NotImplemented

        return self.poset is other.poset and self.p == other.p

    def __hash__(self) -> int:
        return hash(self.p)

    def __repr__(self) -> str:
        return "RankDistribution(%s)"%(', '.join(fmtRational(v) for v in self.p))

    def reversed(self) -> 'RankDistribution':
        return RankDistribution(self.poset, self.p[::-1])

    def counts(self) -> Tuple[int, ...]:
        return tuple(int(v * self.poset.level_size(i)) for i, v in enumerate(self.p))

    @property
    def a(self) -> int:
        """
        Expected size of the random family.
        """
        return sum(self.counts())

    def h(self) -> int:
        """
        Potential sum of |2i - n| p_i |P_i|.
        """
        n = self.poset.n

        return sum(abs(2 * i - n) * c for i, c in enumerate(self.counts()))

    def record(self) -> List[str]:
        return [fmtRational(v) for v in self.p]


def w_k(dist:RankDistribution, k:int) -> Fraction:
    """
    Expected number of k-chains in the random family that holds each element
    x independently with probability p_{r(x)}.
    """
    P, p = dist.poset, dist.p
    support = [i for i, v in enumerate(p) if v]
    res = Fraction(0)

    for J in itertools.combinations(support, k):
        prod = Fraction(1)

        for j in J:
            prod *= p[j]

        res += rank_chain_count(P, J) * prod

    return res


@dataclass
class MonteCarloEstimate:
    mean: float
    low: float
    high: float
    samples: int

    def __contains__(self, value:RATIONAL) -> bool:
        return self.low <= float(value) <= self.high


def sample_wk(
    dist:RankDistribution,
    k:int,
    samples:int,
    seed:Union[int, random.Random, None] = 0,
    level:float = 0.999
) -> MonteCarloEstimate:
    """
    Monte Carlo mean of c_k(R) with a normal confidence band.
    """
    P, rng = dist.poset, rngOf(seed)
    values = np.zeros(samples, dtype=float)

    for t in range(samples):
        R = [
            x for i in range(P.n + 1) for x in P.level(i)
            if dist.p[i] and rng.randrange(dist.p[i].denominator) < dist.p[i].numerator
        ]
        values[t] = chain_vector(P, R, k)[k]

    z = float(norm.ppf(0.5 + level / 2))
    half = z * values.std(ddof=1) / np.sqrt(samples) if samples > 1 else 0.0

    return MonteCarloEstimate(float(values.mean()), float(values.mean() - half), float(values.mean() + half), samples)


@dataclass
class CompressionStep:
    before: RankDistribution
    after: RankDistribution
    frame: RankDistribution
    reversed: bool = False
    i: Optional[int] = None
    i_prime: Optional[int] = None
    delta: Fraction = Fraction(0)
    delta_prime: Fraction = Fraction(0)

    @property
    def fixpoint(self) -> bool:
        return self.after == self.before

    @property
    def terminal(self) -> bool:
        """
        Transfer between mirror ranks i and n-i; the output has the claimed form.
        """
        return not self.fixpoint and self.i_prime == self.before.poset.n - self.i


def _reverse(p:List[Fraction]) -> List[Fraction]:
    return p[::-1]


def phi_step(dist:RankDistribution) -> CompressionStep:
    """
    One application of the compression operator.

    With i the least index where p_i or p_{n-i} is positive (reversing p so
    that p_i > 0) and i' the least index above i with p_{i'} != 1, the input
    is a fixpoint when i' does not exist, when i' = n-i+1, or when i' = n-i
    and p_{i'} = 0. When i' = n-i the vector is reversed if needed so that
    p_i <= p_{n-i}. Otherwise the largest mass delta moves off level i and
    delta' = delta |P_i| / |P_{i'}| onto level i'. The output stays in the
    (possibly reversed) frame.
    """
    if not isinstance(dist, RankDistribution):
        raise ValueError(" \
            [ERROR] phi_step: expected a RankDistribution, got %r. \
            "%(dist,)
        )

    P, n = dist.poset, dist.poset.n
    sizes = P.level_sizes()

    if sizes != sizes[::-1]:
        raise ValueError(" \
            [ERROR] phi_step: level sizes %r are not palindromic. \
            "%(sizes,)
        )

    identity = CompressionStep(dist, dist, dist)
    p = list(dist.p)
    i = next((t for t in range(n + 1) if max(p[t], p[n - t]) > 0), None)

    if i is None:
        return identity

    flipped = False

    def locate():
        return next((t for t in range(i + 1, n + 1) if p[t] != 1), None)

    if p[i] == 0:
        p, flipped = _reverse(p), True

    i2 = locate()

    if i2 is not None and i2 == n - i and 0 < p[i2] < 1 and p[i] > p[n - i]:
        p, flipped = _reverse(p), not flipped
        i2 = locate()

    if i2 is None or i2 == n - i + 1 or (i2 == n - i and p[i2] == 0):
        return identity

    delta = min(p[i], (1 - p[i2]) * Fraction(sizes[i2], sizes[i]))
    delta2 = delta * Fraction(sizes[i], sizes[i2])
    frame = RankDistribution(P, p)
    p[i] -= delta
    p[i2] += delta2

    return CompressionStep(dist, RankDistribution(P, p), frame, flipped, i, i2, delta, delta2)


def claimed_form(dist:RankDistribution) -> Optional[Tuple[str, int]]:
    """
    (ordering name, l) when p_{mu(m)} = 1 for m < l and p_{mu(m)} = 0 for
    m > l for some mu in {mu_-, mu_+}; mu_+ is reported when both match.
    """
    n = dist.poset.n
    res = None

    for mu in orderings(n):
        vals = [dist.p[m] for m in mu.mu]
        lead = next((t for t, v in enumerate(vals) if v != 1), n + 1)
        ell = min(lead + 1, n + 1)

        if all(v == 0 for v in vals[ell:]):
            res = (mu.name, ell)

    return res


@dataclass
class Trajectory:
    k: int
    start: RankDistribution
    steps: List[CompressionStep]
    w: List[Fraction]
    h: List[int]
    form: Tuple[str, int]
    m_k: int

    @property
    def endpoint(self) -> RankDistribution:
        return self.steps[-1].after if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def strictness_map(self) -> List[Dict[str, Any]]:
        """
        Per step: the indices moved, the frame and the drop of w_k.
        """
        return [
            {
                'step': t, 'i': s.i, 'i_prime': s.i_prime, 'reversed': s.reversed,
                'dw': self.w[t] - self.w[t + 1], 'strict': self.w[t] > self.w[t + 1]
            }
            for t, s in enumerate(self.steps)
        ]

    def records(self) -> List[Dict[str, Any]]:
        """
        One JSON-friendly record per step; rationals as `num/den` strings.
        """
        res = [{
            'step': 0, 'i': None, 'i_prime': None, 'reversed': False, 'delta': None,
            'delta_prime': None, 'p': self.start.record(), 'w': fmtRational(self.w[0]), 'h': self.h[0]
        }]

        for t, s in enumerate(self.steps):
            res.append({
                'step': t + 1, 'i': s.i, 'i_prime': s.i_prime, 'reversed': s.reversed,
                'delta': fmtRational(s.delta), 'delta_prime': fmtRational(s.delta_prime),
                'p': s.after.record(), 'w': fmtRational(self.w[t + 1]), 'h': self.h[t + 1]
            })

        return res


def compress_to_fixpoint(dist:RankDistribution, k:int, table:Optional[MkTable] = None) -> Trajectory:
    """
    Iterate phi_step until a fixpoint.

    Asserted along the way: w_k never increases, h drops on every step that
    is neither a fixpoint nor a mirror transfer, the number of steps stays
    within h + n + 2, the endpoint has the claimed form, and its w_k equals
    m_k(a).

    Raises:
        PropertyViolation: when an assertion fails.
    """
    P = dist.poset
    cap = dist.h() + P.n + 2
    steps, w, h = [], [w_k(dist, k)], [dist.h()]
    cur = dist

    while True:
        step = phi_step(cur)

        if step.fixpoint:
            break

        if len(steps) >= cap:
            raise PropertyViolation(
                "[ERROR] compress_to_fixpoint: no fixpoint within %d steps from %r"%(cap, dist),
                dist.record()
            )

        steps.append(step)
        cur = step.after
        w.append(w_k(cur, k))
        h.append(cur.h())

        if w[-1] > w[-2]:
            raise PropertyViolation(
                "[ERROR] compress_to_fixpoint: w_k rose from %s to %s at step %d"%(
                    fmtRational(w[-2]), fmtRational(w[-1]), len(steps)
                ),
                dist.record()
            )

        if not step.terminal and h[-1] >= h[-2]:
            raise PropertyViolation(
                "[ERROR] compress_to_fixpoint: h did not drop at step %d"%(len(steps)),
                dist.record()
            )

    form = claimed_form(cur)

    if form is None:
        raise PropertyViolation(
            "[ERROR] compress_to_fixpoint: endpoint %r lacks the claimed form"%(cur,),
            dist.record()
        )

    mk = table[cur.a] if table is not None else m_k(P, k, cur.a)

    if w[-1] != mk:
        raise PropertyViolation(
            "[ERROR] compress_to_fixpoint: endpoint w_k = %s but m_k(%d) = %d"%(fmtRational(w[-1]), cur.a, mk),
            dist.record()
        )

    return Trajectory(k, dist, steps, w, h, form, mk)


@dataclass
class WkChange:
    sum1: Fraction
    sum2: Fraction
    sum3: Fraction

    @property
    def total(self) -> Fraction:
        return self.sum1 + self.sum2 + self.sum3


def wk_change_decomposition(dist:RankDistribution, step:CompressionStep, k:int) -> WkChange:
    """
    Split w_k(p) - w_k(Phi(p)) over J with i, i' not in J: sum1 (|J| = k-1,
    mass leaving i), sum2 (|J| = k-1, mass reaching i', signed negative) and
    sum3 (|J| = k-2, both ends), with p taken in the step's frame.

    Raises:
        PropertyViolation: if a sum3 summand is negative or the total differs
            from the actual change of w_k.
    """
    if step.before != dist:
        raise ValueError(" \
            [ERROR] wk_change_decomposition: the step was not produced from %r. \
            "%(dist,)
        )

    if step.fixpoint:
        return WkChange(Fraction(0), Fraction(0), Fraction(0))

    P, p = dist.poset, step.frame.p
    i, i2, d, d2 = step.i, step.i_prime, step.delta, step.delta_prime
    rest = [j for j in range(P.n + 1) if j not in (i, i2)]

    def prod(J):
        res = Fraction(1)

        for j in J:
            res *= p[j]

        return res

    def ck(S):
        return rank_chain_count(P, tuple(sorted(S)))

    sum1 = sum((ck(J + (i,)) * d * prod(J) for J in itertools.combinations(rest, k - 1)), Fraction(0))
    sum2 = -sum((ck(J + (i2,)) * d2 * prod(J) for J in itertools.combinations(rest, k - 1)), Fraction(0))
    sum3 = Fraction(0)
    change = p[i] * p[i2] - (p[i] - d) * (p[i2] + d2)

    if k >= 2:
        for J in itertools.combinations(rest, k - 2):
            term = ck(J + (i, i2)) * change * prod(J)

            if term < 0:
                raise PropertyViolation(
                    "[ERROR] wk_change_decomposition: negative two-level term for J=%r"%(J,),
                    J
                )

            sum3 += term

    res = WkChange(sum1, sum2, sum3)

    if res.total != w_k(dist, k) - w_k(step.after, k):
        raise PropertyViolation(
            "[ERROR] wk_change_decomposition: sums give %s, w_k changed by %s"%(
                fmtRational(res.total), fmtRational(w_k(dist, k) - w_k(step.after, k))
            ),
            dist.record()
        )

    return res


@dataclass
class ComparisonResult:
    lhs: Fraction
    rhs: Fraction
    strict: bool
    strict_expected: bool
    sigma_J: RANKSET


def delta_ck_comparison(
    poset:GradedPoset,
    k:int,
    i:int,
    i_prime:int,
    J:Iterable[int],
    delta:Optional[RATIONAL] = None,
    step:Optional[CompressionStep] = None
) -> ComparisonResult:
    """
    Compare delta c_k'(empty, J + {i}) with delta' c_k'(empty, sigma(J) + {i'}),
    sigma reversing the interval [i+1, i'-1].

    Args:
        J (iterable): k-1 ranks inside [i+1, n-i-1], avoiding i and i'.
        delta (rational, optional): mass leaving level i, 1 by default;
            delta' = delta |P_i| / |P_{i'}|.
        step (CompressionStep, optional): take delta and delta' from a step.

    Raises:
        PropertyViolation: if lhs < rhs, or lhs = rhs where the poset is
            strictly descending, i' < n-i and k >= 2.
    """
    n = poset.n
    J = toRankSet(J, n, 'delta_ck_comparison')

    if not (0 <= i < i_prime <= n - i):
        raise ValueError(" \
            [ERROR] delta_ck_comparison: need 0 <= i < i' <= n-i, got i=%d, i'=%d. \
            "%(i, i_prime)
        )

    if len(J) != k - 1 or i in J or i_prime in J or any(j < i + 1 or j > n - i - 1 for j in J):
        raise ValueError(" \
            [ERROR] delta_ck_comparison: J=%r must hold k-1=%d ranks in [%d, %d] other than i, i'. \
            "%(J, k - 1, i + 1, n - i - 1)
        )

    if step is not None:
        if step.fixpoint or (step.i, step.i_prime) != (i, i_prime) or step.before.poset.n != n:
            raise ValueError(" \
                [ERROR] delta_ck_comparison: the step moves mass from %r to %r, not from %d to %d. \
                "%(step.i, step.i_prime, i, i_prime)
            )

        delta, delta2 = step.delta, step.delta_prime
    else:
        delta = Fraction(1) if delta is None else parseRational(delta)
        delta2 = delta * Fraction(poset.level_size(i), poset.level_size(i_prime))

    sigma = tuple(sorted(i + i_prime - j if i < j < i_prime else j for j in J))
    lhs = delta * rank_chain_count(poset, tuple(sorted(J + (i,))))
    rhs = delta2 * rank_chain_count(poset, tuple(sorted(sigma + (i_prime,))))
    expected = k >= 2 and i_prime < n - i and check_descending(poset).strict
    res = ComparisonResult(lhs, rhs, lhs > rhs, expected, sigma)

    if lhs < rhs or (expected and lhs == rhs):
        raise PropertyViolation(
            "[ERROR] delta_ck_comparison: %s vs %s at i=%d, i'=%d, J=%r"%(
                fmtRational(lhs), fmtRational(rhs), i, i_prime, J
            ),
            (i, i_prime, J)
        )

    return res


def lemma_main_sweep(poset:GradedPoset, k:int, compress:bool = False) -> PropertyReport:
    """
    For every rank set I: c_k of the union of its levels is at least
    m_k(sum of |P_i|), strictly exactly when the poset is strictly
    descending, |I| >= k and I is not centred.

    With `compress`, each characteristic vector is also compressed to its
    fixpoint; the details then list the rank sets whose first step leaves
    w_k unchanged although the final value drops.
    """
    n = poset.n
    table = mk_table(poset, k)
    strict_poset = check_descending(poset).strict
    strict_sets, flat_first = 0, []

    for r in range(n + 2):
        for I in itertools.combinations(range(n + 1), r):
            lhs = level_union_chains(poset, I, k)
            a = sum(poset.level_size(i) for i in I)
            rhs = table[a]
            expect_strict = k >= 2 and strict_poset and len(I) >= k and not is_centred_rank_set(I, n)

            if lhs < rhs or (lhs > rhs) != expect_strict:
                return PropertyReport('level union minimality', False, (I, lhs, rhs), {'k': k})

            strict_sets += expect_strict

            if not compress:
                continue

            traj = compress_to_fixpoint(RankDistribution.from_levels(poset, I), k, table)

            if (traj.w[0] > traj.m_k) != expect_strict:
                return PropertyReport('level union minimality', False, ('compression', I, traj.w[0], traj.m_k), {'k': k})

            if expect_strict and traj.steps and traj.w[1] == traj.w[0]:
                flat_first.append(I)

    return PropertyReport(
        'level union minimality', True,
        details={'k': k, 'rank_sets': 1 << (n + 1), 'strict': strict_sets, 'flat_first_step': flat_first}
    )
