from chainmin.misc import *
from chainmin.core import GradedPoset, Family
from chainmin.calc.chains import level_union_chains, ck_prime_ranks


@dataclass(frozen=True)
class CentredOrdering:
    """
    An ordering mu(1), ..., mu(n+1) of the ranks [0, n] whose distance from
    the middle rank n/2 is nondecreasing.
    """
    n: int
    mu: Tuple[int, ...]
    name: str = 'mu'

    def __post_init__(self) -> None:
        if sorted(self.mu) != list(range(self.n + 1)):
            raise ValueError(" \
                [ERROR] CentredOrdering: %r is not a permutation of [0, %d]. \
                "%(self.mu, self.n)
            )

        dist = [abs(2 * m - self.n) for m in self.mu]

        if any(d > e for d, e in zip(dist, dist[1:])):
            raise ValueError(" \
                [ERROR] CentredOrdering: %r moves away from the middle and back. \
                "%(self.mu,)
            )

    def __call__(self, ell:int) -> int:
        return self.mu[ell - 1]

    def __len__(self) -> int:
        return len(self.mu)

    def prefix(self, ell:int) -> RANKSET:
        """
        The rank set {mu(1), ..., mu(ell)}.
        """
        return tuple(sorted(self.mu[:ell]))


def mu_minus(n:int) -> CentredOrdering:
    """
    mu_-(l) = floor((n + (-1)^l l) / 2) for odd n, ceil(...) for even n.
    """
    if not isInteger(n) or n < 0:
        raise ValueError(" \
            [ERROR] mu_minus: n must be a non-negative integer, got %r. \
            "%(n,)
        )

    mu = []

    for ell in range(1, n + 2):
        num = n + (ell if ell % 2 == 0 else -ell)
        mu.append(num // 2 if n % 2 else -((-num) // 2))

    return CentredOrdering(n, tuple(mu), 'mu-')


def mu_plus(n:int) -> CentredOrdering:
    return CentredOrdering(n, tuple(n - m for m in mu_minus(n).mu), 'mu+')


def orderings(n:int) -> Tuple[CentredOrdering, CentredOrdering]:
    return (mu_minus(n), mu_plus(n))


def centred_rank_sets(n:int, ell:int) -> List[RANKSET]:
    """
    The centred ell-subsets of [0, n]: mu_-([ell]) then mu_+([ell]), deduplicated.
    """
    if not isInteger(ell) or ell < 1 or ell > n + 1:
        raise ValueError(" \
            [ERROR] centred_rank_sets: ell must lie in [1, %d], got %r. \
            "%(n + 1, ell)
        )

    res = []

    for mu in orderings(n):
        S = mu.prefix(ell)

        if S not in res:
            res.append(S)

    return res


def is_centred_rank_set(I:Iterable[int], n:int) -> bool:
    I = toRankSet(I, n, 'is_centred_rank_set')

    return len(I) == 0 or I in centred_rank_sets(n, len(I))


def a_ell(poset:GradedPoset, ell:int) -> int:
    """
    Total size of the ell most central levels.

    Raises:
        PropertyViolation: when the two centred ell-sets give different sums.
    """
    if not isInteger(ell) or ell < 0 or ell > poset.n + 1:
        raise ValueError(" \
            [ERROR] a_ell: ell must lie in [0, %d], got %r. \
            "%(poset.n + 1, ell)
        )

    sums = [sum(poset.level_size(i) for i in mu.prefix(ell)) for mu in orderings(poset.n)]

    if sums[0] != sums[1]:
        raise PropertyViolation(
            "[ERROR] a_ell: centred sets of size %d have %d and %d elements"%(ell, sums[0], sums[1]),
            (ell, sums)
        )

    return sums[0]


def breakpoints(poset:GradedPoset) -> Tuple[int, ...]:
    """
    (a_0, a_1, ..., a_{n+1}) with a_0 = 0 and a_{n+1} = |P|.
    """
    return tuple(a_ell(poset, ell) for ell in range(poset.n + 2))


def boundary_level(bps:Sequence[int], a:int) -> int:
    """
    The least ell with a <= a_ell; 0 when a = 0.
    """
    return next(ell for ell, b in enumerate(bps) if a <= b)


@dataclass
class ExtremalPrefix:
    ordering: CentredOrdering
    a: int
    family: Family
    ell: int
    elements: Tuple[int, ...]


def build_X(
    poset:GradedPoset,
    a:int,
    ordering:Optional[CentredOrdering] = None,
    tie_order:Optional[Callable[[int], Any]] = None
) -> ExtremalPrefix:
    """
    The family X_a of the first `a` elements when levels are listed in the
    order of `ordering` and each level in `tie_order`.

    Args:
        poset (GradedPoset): the poset.
        a (int): family size in [0, |P|].
        ordering (CentredOrdering, optional): defaults to mu_-.
        tie_order (Callable, optional): sort key on element indices within a
            level; defaults to index order.
    """
    if not isInteger(a) or a < 0 or a > len(poset):
        raise ValueError(" \
            [ERROR] build_X: a must lie in [0, %d], got %r. \
            "%(len(poset), a)
        )

    ordering = ordering or mu_minus(poset.n)
    listing = []

    for i in ordering.mu:
        listing.extend(sorted(poset.level(i), key=tie_order))

    elements = tuple(listing[:a])
    ell = boundary_level(breakpoints(poset), a)

    return ExtremalPrefix(ordering, a, Family(poset, elements), ell, elements)


def _segment(poset:GradedPoset, k:int, ordering:CentredOrdering, ell:int) -> Tuple[int, int]:
    """
    (c_k'(empty, mu([ell-1])), c_k'(mu(ell), mu([ell-1]))): value at the
    start of segment `ell` and its slope.
    """
    below = ordering.prefix(ell - 1)
    base = level_union_chains(poset, below, k)
    slope = ck_prime_ranks(poset, (ordering(ell),), below, k)

    return base, slope


@alias({'chain_size':'k', 'size':'a'})
def m_k(poset:GradedPoset, k:int, a:int, ordering:Optional[CentredOrdering] = None) -> int:
    """
    Number of k-chains in a centred family of `a` elements, by the closed form
    c_k'(empty, mu([l-1])) + (a - a_{l-1}) c_k'(mu(l), mu([l-1])).
    """
    if not isInteger(k) or k < 1:
        raise ValueError(" \
            [ERROR] m_k: k must be a positive integer, got %r. \
            "%(k,)
        )

    if not isInteger(a) or a < 0 or a > len(poset):
        raise ValueError(" \
            [ERROR] m_k: a must lie in [0, %d], got %r. \
            "%(len(poset), a)
        )

    if a == 0:
        return 0

    ordering = ordering or mu_minus(poset.n)
    bps = breakpoints(poset)
    ell = boundary_level(bps, a)
    base, slope = _segment(poset, k, ordering, ell)

    return base + (a - bps[ell - 1]) * slope


@dataclass
class MkTable:
    k: int
    values: Tuple[int, ...]
    breakpoints: Tuple[int, ...]
    poset: dict = field(default_factory=dict)

    def __getitem__(self, a:int) -> int:
        return self.values[a]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def delta(self) -> Tuple[int, ...]:
        return delta_mk(self)

    def rows(self) -> List[Tuple[int, int, Optional[int], bool]]:
        """
        (a, m_k(a), delta m_k(a), is-breakpoint) per a; delta is None at a = 0.
        """
        d = (None,) + self.delta
        bps = set(self.breakpoints)

        return [(a, m, d[a], a in bps) for a, m in enumerate(self.values)]


@alias({'chain_size':'k'})
def mk_table(poset:GradedPoset, k:int, ordering:Optional[CentredOrdering] = None) -> MkTable:
    """
    m_k(0), ..., m_k(|P|), one closed-form segment per level.
    """
    if not isInteger(k) or k < 1:
        raise ValueError(" \
            [ERROR] mk_table: k must be a positive integer, got %r. \
            "%(k,)
        )

    ordering = ordering or mu_minus(poset.n)
    bps = breakpoints(poset)
    values = [0]

    for ell in range(1, poset.n + 2):
        base, slope = _segment(poset, k, ordering, ell)
        values.extend(base + t * slope for t in range(1, bps[ell] - bps[ell - 1] + 1))

    return MkTable(k, tuple(values), bps, poset.descriptor())


def delta_mk(table:MkTable) -> Tuple[int, ...]:
    """
    Delta m_k(a) = m_k(a) - m_k(a-1) for a = 1, ..., |P|.
    """
    v = table.values

    return tuple(v[a] - v[a - 1] for a in range(1, len(v)))


def convexity_certificate(
    table:MkTable,
    k:Optional[int] = None,
    breakpoints:Optional[Sequence[int]] = None
) -> PropertyReport:
    """
    Certify that Delta m_k is nondecreasing and, for k >= 2, jumps strictly
    at every breakpoint a_l with l >= k-1 and a_l < |P|.

    Returns:
        report (PropertyReport): details hold the positions where Delta
            changes and the number of distinct Delta values.
    """
    k = table.k if k is None else k
    bps = table.breakpoints if breakpoints is None else tuple(breakpoints)
    d = (None,) + delta_mk(table)
    N = len(table.values) - 1

    for a in range(1, N):
        if d[a] > d[a + 1]:
            return PropertyReport('convexity', False, ('decrease', a, d[a], d[a + 1]))

    strict = []

    if k >= 2:
        for ell in range(max(k - 1, 1), len(bps)):
            a = bps[ell]

            if a >= N:
                continue

            if not d[a] < d[a + 1]:
                return PropertyReport('convexity', False, ('flat breakpoint', ell, a, d[a], d[a + 1]))

            strict.append(a)

    changes = [a for a in range(1, N) if d[a] != d[a + 1]]

    return PropertyReport(
        'convexity', True,
        details={'strict_jumps': strict, 'changes': changes, 'distinct_deltas': len(set(d[1:]))}
    )


def is_centred_mask(poset:GradedPoset, mask:int) -> Tuple[bool, Any]:
    """
    Centredness of the family with member bitmask `mask`.

    Returns:
        (centred, witness): witness is ('i', y) for a missing element y closer
            to the middle than some member, or ('ii', i, member_pair,
            non_member_pair) for mirror ranks i < n/2 carrying both a
            comparable member pair and a comparable non-member pair.
    """
    n = poset.n

    if mask == 0:
        return True, None

    full = (1 << len(poset)) - 1
    dmax = max(abs(2 * i - n) for i in range(n + 1) if mask & poset.level_mask(i))

    for i in range(n + 1):
        if abs(2 * i - n) < dmax:
            missing = poset.level_mask(i) & ~mask

            if missing:
                return False, ('i', next(bitsOf(missing)))

    for i in range(n + 1):
        if 2 * i >= n:
            break

        top = poset.level_mask(n - i)
        inside = outside = None

        for x in poset.level(i):
            if mask >> x & 1:
                hit = poset.up_mask(x) & top & mask

                if hit and inside is None:
                    inside = (x, next(bitsOf(hit)))
            else:
                hit = poset.up_mask(x) & top & full & ~mask

                if hit and outside is None:
                    outside = (x, next(bitsOf(hit)))

            if inside and outside:
                return False, ('ii', i, inside, outside)

    return True, None


def is_centred(family:Family) -> Tuple[bool, Any]:
    return is_centred_mask(family.poset, family.mask)


def erdos_bound_check(poset:GradedPoset, k:int, table:Optional[MkTable] = None) -> PropertyReport:
    """
    The largest a with m_k(a) = 0 is a_{k-1}, the sum of the k-1 largest
    level sizes.
    """
    table = table or mk_table(poset, k)
    zero = max(a for a, m in enumerate(table.values) if m == 0)
    a_prev = table.breakpoints[min(k - 1, poset.n + 1)]
    largest = sum(sorted(poset.level_sizes(), reverse=True)[:k - 1])
    passed = zero == a_prev == largest

    return PropertyReport(
        'Erdos bound', passed, None if passed else (zero, a_prev, largest),
        {'k': k, 'max_zero': zero, 'a_k-1': a_prev}
    )
