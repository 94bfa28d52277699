from chainmin.misc import *
from chainmin.core import GradedPoset, Family


BRUTEFORCE_MAX = 20
HOMOGENEITY_EXHAUSTIVE_MAX = 16


def level_sizes(poset:GradedPoset, method:str = 'auto') -> Tuple[int, ...]:
    """
    Sizes |P_0|, ..., |P_n| of the rank levels.

    Args:
        poset (GradedPoset): the poset.
        method (str): 'auto' prefers closed forms, 'count' enumerates levels.
    """
    if method == 'count':
        return tuple(len(poset.level(i)) for i in range(poset.n + 1))

    if method != 'auto':
        raise ValueError(" \
            [ERROR] level_sizes: unknown method `%s`. \
            "%(method)
        )

    return poset.level_sizes()


def chain_vector(poset:GradedPoset, members:Iterable[int], k:int) -> List[int]:
    """
    Chain counts [c_0, c_1, ..., c_k] of a member set, with c_0 = 1.

    Members are visited in the rank-major linear extension; for each one the
    number of j-chains topped by it is the sum over members strictly below
    of their (j-1)-chain counts.
    """
    members = sorted(set(members), key=poset.position)
    res = [1] + [0] * k

    if k == 0:
        return res

    fam = maskOf(members)
    ending = {}

    for x in members:
        cnt = [0] * (k + 1)
        cnt[1] = 1

        for y in bitsOf(poset.down_mask(x) & fam):
            below = ending[y]

            for j in range(2, k + 1):
                cnt[j] += below[j - 1]

        ending[x] = cnt

        for j in range(1, k + 1):
            res[j] += cnt[j]

    return res


def count_chains(family:Family, k:int) -> int:
    """
    Number of k-element chains contained in `family`.

    Args:
        family (Family): the family.
        k (int): chain size, at least 1.
    """
    if not isInteger(k) or k < 1:
        raise ValueError(" \
            [ERROR] count_chains: k must be a positive integer, got %r. \
            "%(k,)
        )

    if k > len(family):
        return 0

    return chain_vector(family.poset, family.members, k)[k]


def count_chains_bruteforce(family:Family, k:int) -> int:
    if len(family) > BRUTEFORCE_MAX:
        raise ResourceLimitError(" \
            [ERROR] count_chains_bruteforce: %d members exceed the bound %d. \
            "%(len(family), BRUTEFORCE_MAX)
        )

    P = family.poset

    return sum(1 for xs in itertools.combinations(list(family), k) if P.is_chain(xs))


def chains_with_ranks(poset:GradedPoset, I:Iterable[int]) -> Iterator[CHAIN]:
    """
    Every chain whose rank set is exactly `I`, in lexicographic index order.
    """
    I = toRankSet(I, poset.n, 'chains_with_ranks')

    def extend(chain:list, t:int) -> Iterator[CHAIN]:
        if t == len(I):
            yield tuple(chain)
            return

        for y in poset.level(I[t]):
            if not chain or poset.less(chain[-1], y):
                chain.append(y)
                yield from extend(chain, t + 1)
                chain.pop()

    yield from extend([], 0)


def canonical_chain(poset:GradedPoset, I:Iterable[int]) -> Optional[CHAIN]:
    """
    The least chain with rank set `I`: at each rank of `I` in increasing
    order, the least-indexed element above the partial chain that still
    completes. None if no such chain exists.
    """
    return next(chains_with_ranks(poset, I), None)


def random_chain_with_ranks(poset:GradedPoset, I:Iterable[int], rng:random.Random) -> Optional[CHAIN]:
    I = toRankSet(I, poset.n, 'random_chain_with_ranks')
    chain = []

    for i in I:
        options = [y for y in poset.level(i) if not chain or poset.less(chain[-1], y)]

        if not options:
            return None

        chain.append(rng.choice(options))

    return tuple(chain)


def rank_chain_count(poset:GradedPoset, T:Iterable[int], method:str = 'auto') -> int:
    """
    Number of chains whose rank set is exactly `T`.

    Args:
        poset (GradedPoset): the poset.
        T (iterable): the rank set.
        method (str): 'formula' uses |P_{t_0}| times the product of c_2' over
            consecutive ranks (valid on homogeneous posets), 'count' counts
            |T|-chains in the union of the levels of `T`, 'auto' takes the
            formula on posets with closed forms.
    """
    T = toRankSet(T, poset.n, 'rank_chain_count')

    if method == 'auto':
        method = 'formula' if poset.closed_form else 'count'

    if method not in ('formula', 'count'):
        raise ValueError(" \
            [ERROR] rank_chain_count: unknown method `%s`. \
            "%(method)
        )

    if len(T) == 0:
        return 1

    key = ('rcc', method, T)

    if key not in poset._cache:
        if method == 'formula':
            res = poset.level_size(T[0])

            for s, t in zip(T, T[1:]):
                res *= poset.c2_prime(s, t)
        else:
            members = [x for i in T for x in poset.level(i)]
            res = chain_vector(poset, members, len(T))[len(T)]

        poset._cache[key] = res

    return poset._cache[key]


def maximal_chain_count(poset:GradedPoset, method:str = 'auto') -> int:
    return rank_chain_count(poset, range(poset.n + 1), method)


def level_union_chains(poset:GradedPoset, I:Iterable[int], k:int, method:str = 'auto') -> int:
    """
    c_k of the union of the levels in `I`, summed over k-subsets of `I`.
    """
    I = toRankSet(I, poset.n, 'level_union_chains')

    return sum(rank_chain_count(poset, S, method) for S in itertools.combinations(I, k))


def ck_prime_chain(poset:GradedPoset, L:Iterable[int], J:Iterable[int], k:int) -> int:
    """
    Number of k-chains M containing the chain `L` with r(M - L) inside `J`.

    Args:
        poset (GradedPoset): the poset.
        L (iterable): element indices forming a chain.
        J (iterable): ranks disjoint from the ranks of `L`.
        k (int): size of the chains counted.
    """
    L = tuple(sorted(set(int(x) for x in L), key=poset.position))
    J = toRankSet(J, poset.n, 'ck_prime_chain')

    if not poset.is_chain(L):
        raise ValueError(" \
            [ERROR] ck_prime_chain: `%r` is not a chain. \
            "%(L,)
        )

    ranks = set(poset.rank(x) for x in L)

    if ranks & set(J):
        raise ValueError(" \
            [ERROR] ck_prime_chain: J=%r meets the ranks of L. \
            "%(J,)
        )

    if k < len(L):
        raise ValueError(" \
            [ERROR] ck_prime_chain: the chain has %d > k=%d elements. \
            "%(len(L), k)
        )

    extra = k - len(L)

    if extra == 0:
        return 1

    candidates = [
        y for j in J for y in poset.level(j)
        if all(poset.comparable(x, y) for x in L)
    ]

    return chain_vector(poset, candidates, extra)[extra]


def ck_prime_ranks(poset:GradedPoset, I:Iterable[int], J:Iterable[int], k:int, method:str = 'auto') -> int:
    """
    c_k'(I, J): k-chains through a fixed chain of rank set `I` whose other
    ranks lie in `J`. Well defined on homogeneous posets.

    Args:
        poset (GradedPoset): the poset.
        I, J (iterable): disjoint rank sets.
        k (int): size of the chains counted.
        method (str): 'product' sums rank_chain_count(I + S) / rank_chain_count(I)
            over the (k-|I|)-subsets S of J; 'enumerate' counts through the
            canonical chain of rank set `I`; 'auto' picks 'product' on posets
            with closed forms.
    """
    I = toRankSet(I, poset.n, 'ck_prime_ranks')
    J = toRankSet(J, poset.n, 'ck_prime_ranks')

    if set(I) & set(J):
        raise ValueError(" \
            [ERROR] ck_prime_ranks: I=%r and J=%r must be disjoint. \
            "%(I, J)
        )

    if method == 'auto':
        method = 'product' if poset.closed_form else 'enumerate'

    if method == 'enumerate':
        L = canonical_chain(poset, I)

        if L is None:
            raise ValueError(" \
                [ERROR] ck_prime_ranks: no chain has rank set %r. \
                "%(I,)
            )

        return 0 if k < len(I) else ck_prime_chain(poset, L, J, k)

    if method != 'product':
        raise ValueError(" \
            [ERROR] ck_prime_ranks: unknown method `%s`. \
            "%(method)
        )

    base = rank_chain_count(poset, I)

    if base == 0:
        raise ValueError(" \
            [ERROR] ck_prime_ranks: no chain has rank set %r. \
            "%(I,)
        )

    if k < len(I):
        return 0

    res = 0

    for S in itertools.combinations(J, k - len(I)):
        total = rank_chain_count(poset, tuple(sorted(I + S)))

        if total % base:
            raise PropertyViolation(
                "[ERROR] ck_prime_ranks: %d chains on %r do not split evenly over %d chains on %r"%(
                    total, tuple(sorted(I + S)), base, I
                ),
                (I, S)
            )

        res += total // base

    return res


def check_symmetry(
    poset:GradedPoset,
    k:int,
    samples:Optional[int] = None,
    seed:Union[int, random.Random, None] = 0
) -> PropertyReport:
    """
    Check |P_i| = |P_{n-i}| and c_k'(I, J) = c_k'(n-I, n-J) over disjoint
    rank-set pairs, all of them or `samples` random ones.
    """
    n = poset.n
    sizes = poset.level_sizes()

    for i in range(n + 1):
        if sizes[i] != sizes[n - i]:
            return PropertyReport('symmetry', False, ('levels', i, sizes[i], sizes[n - i]))

    def mirror(S):
        return tuple(sorted(n - s for s in S))

    if samples is None:
        pairs = (
            (tuple(i for i in range(n + 1) if lab[i] == 1), tuple(j for j in range(n + 1) if lab[j] == 2))
            for lab in itertools.product(range(3), repeat=n + 1)
        )
    else:
        rng = rngOf(seed)
        labs = [[rng.randrange(3) for _ in range(n + 1)] for _ in range(samples)]
        pairs = (
            (tuple(i for i in range(n + 1) if lab[i] == 1), tuple(j for j in range(n + 1) if lab[j] == 2))
            for lab in labs
        )

    checked = 0

    for I, J in pairs:
        lhs = ck_prime_ranks(poset, I, J, k)
        rhs = ck_prime_ranks(poset, mirror(I), mirror(J), k)
        checked += 1

        if lhs != rhs:
            return PropertyReport('symmetry', False, (I, J, lhs, rhs))

    return PropertyReport('symmetry', True, details={'k': k, 'pairs': checked})


@dataclass
class DescentReport:
    classification: str
    tight: List[Tuple[int, int]] = field(default_factory=list)
    violating: List[Tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.classification != 'neither'

    @property
    def strict(self) -> bool:
        return self.classification == 'strictly_descending'


def check_descending(poset:GradedPoset) -> DescentReport:
    """
    Compare c_2'(i, j) with c_2'(i-1, j-1) for all 0 < i < j <= n.

    Returns:
        report (DescentReport): 'strictly_descending' if every comparison is
            strict (vacuously when n < 2), 'descending' if some are tight,
            'neither' if some are violated.
    """
    tight, violating = [], []

    for i in range(1, poset.n + 1):
        for j in range(i + 1, poset.n + 1):
            a, b = poset.c2_prime(i, j), poset.c2_prime(i - 1, j - 1)

            if a == b:
                tight.append((i, j))
            elif a > b:
                violating.append((i, j))

    if violating:
        return DescentReport('neither', tight, violating)

    if tight:
        return DescentReport('descending', tight)

    return DescentReport('strictly_descending')


def _rank_profile(poset:GradedPoset, L:CHAIN, size:int) -> Dict[int, int]:
    """
    Number of chains of at most `size` elements comparable to all of `L`
    and off its ranks, keyed by rank-set bitmask.
    """
    ranks = set(poset.rank(x) for x in L)
    candidates = sorted(
        (y for y in poset if poset.rank(y) not in ranks and all(poset.comparable(x, y) for x in L)),
        key=poset.position
    )
    fam = maskOf(candidates)
    ending, total = {}, {0: 1}

    if size == 0:
        return total

    for y in candidates:
        bit = 1 << poset.rank(y)
        prof = {bit: 1}

        for z in bitsOf(poset.down_mask(y) & fam):
            for mask, c in ending[z].items():
                if popcount(mask) < size:
                    prof[mask | bit] = prof.get(mask | bit, 0) + c

        ending[y] = prof

        for mask, c in prof.items():
            total[mask] = total.get(mask, 0) + c

    return total


def check_homogeneity_consequence(
    poset:GradedPoset,
    k_max:int,
    samples:int = 200,
    seed:Union[int, random.Random, None] = 0
) -> PropertyReport:
    """
    Falsification test of homogeneity: chains with equal rank sets extend
    to k-chains (k <= k_max) over every rank set J in equal numbers.

    Two chains agree on every c_k'(L, J) iff they have the same number of
    extensions with each exact rank set, so the check compares those
    profiles. Exhaustive when |P| <= 16; otherwise `samples` random rank
    sets, each with a random chain compared to the canonical one.
    """
    n = poset.n
    exhaustive = len(poset) <= HOMOGENEITY_EXHAUSTIVE_MAX

    if exhaustive:
        rank_sets = (S for r in range(min(k_max, n + 1) + 1) for S in itertools.combinations(range(n + 1), r))
    else:
        warnings.warn(" \
            [WARN] check_homogeneity_consequence: |P|=%d, sampling %d rank sets instead of exhaustive check. \
            "%(len(poset), samples)
        )
        rng = rngOf(seed)
        rank_sets = (
            tuple(sorted(rng.sample(range(n + 1), rng.randint(0, min(k_max, n + 1)))))
            for _ in range(samples)
        )

    checked = 0

    for I in rank_sets:
        if exhaustive:
            chains = chains_with_ranks(poset, I)
        else:
            chains = iter([canonical_chain(poset, I), random_chain_with_ranks(poset, I, rng)])

        ref, ref_chain = None, None

        for L in chains:
            if L is None:
                continue

            prof = _rank_profile(poset, L, k_max - len(I))
            checked += 1

            if ref is None:
                ref, ref_chain = prof, L
            elif prof != ref:
                S = next(m for m in set(prof) | set(ref) if prof.get(m, 0) != ref.get(m, 0))
                J = tuple(bitsOf(S))

                return PropertyReport(
                    'homogeneity consequence', False, (ref_chain, L),
                    {'I': I, 'J': J, 'counts': (ref.get(S, 0), prof.get(S, 0))}
                )

    return PropertyReport(
        'homogeneity consequence', True,
        details={'k_max': k_max, 'chains': checked, 'exhaustive': exhaustive}
    )


def decomposition_identity_check(poset:GradedPoset, I:Iterable[int], k:int) -> PropertyReport:
    """
    c_k of a union of levels equals the sum of c_k'(empty, S) over the
    k-subsets S of its rank set.
    """
    I = toRankSet(I, poset.n, 'decomposition_identity_check')
    lhs = count_chains(Family.levels(poset, I), k)
    rhs = sum(ck_prime_ranks(poset, (), S, k) for S in itertools.combinations(I, k))

    return PropertyReport('decomposition identity', lhs == rhs, None if lhs == rhs else (I, k), {'lhs': lhs, 'rhs': rhs})


def double_counting_check(poset:GradedPoset, i:int, j:int) -> PropertyReport:
    """
    |P_i| c_2'(i, j) = c_2'(empty, {i, j}) = |P_j| c_2'(j, i), with the middle
    term counted directly.
    """
    if i == j:
        raise ValueError(" \
            [ERROR] double_counting_check: ranks must differ, got i = j = %d. \
            "%(i)
        )

    left = poset.level_size(i) * poset.c2_prime(i, j)
    middle = count_chains(Family.levels(poset, (i, j)), 2)
    right = poset.level_size(j) * poset.c2_prime(j, i)
    passed = left == middle == right

    return PropertyReport('double counting', passed, None if passed else (i, j), {'values': (left, middle, right)})


def check_shift_inequality(poset:GradedPoset, k:int) -> PropertyReport:
    """
    c_k'(i, J) <= c_k'(i-s, J-s) for J inside [i+1, n] and 1 <= s <= i, strict
    when the poset is strictly descending and |J| >= k-1.
    """
    n = poset.n
    strict = check_descending(poset).strict
    checked = 0

    for i in range(1, n + 1):
        above = range(i + 1, n + 1)

        for r in range(len(above) + 1):
            for J in itertools.combinations(above, r):
                lhs = ck_prime_ranks(poset, (i,), J, k)

                for s in range(1, i + 1):
                    rhs = ck_prime_ranks(poset, (i - s,), tuple(j - s for j in J), k)
                    checked += 1

                    if lhs > rhs or (strict and k >= 2 and len(J) >= k - 1 and lhs == rhs):
                        return PropertyReport('shift inequality', False, (i, s, J, lhs, rhs))

    return PropertyReport('shift inequality', True, details={'k': k, 'comparisons': checked, 'strict': strict})


def check_rank_unimodal(poset:GradedPoset) -> PropertyReport:
    """
    Levels closer to the middle are at least as large; strictly larger when
    the poset is strictly descending and the distances differ.
    """
    n = poset.n
    sizes = poset.level_sizes()
    strict = check_descending(poset).strict

    for i in range(n + 1):
        for j in range(n + 1):
            di, dj = abs(2 * i - n), abs(2 * j - n)

            if di > dj:
                continue

            if sizes[i] < sizes[j] or (strict and di < dj and sizes[i] == sizes[j]):
                return PropertyReport('rank unimodality', False, (i, j, sizes[i], sizes[j]))

    return PropertyReport('rank unimodality', True, details={'levels': sizes, 'strict': strict})
