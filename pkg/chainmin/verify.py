from chainmin.misc import *
from chainmin.core import GradedPoset, Family, BooleanLattice, poset_from_descriptor
from chainmin.calc.chains import chain_vector, count_chains, check_descending
from chainmin.calc.centred import is_centred_mask, mk_table, breakpoints

import json


SWEEP_MAX = 16
COMBINATION_MAX = 200000
MINIMIZER_MAX = 64
AUDIT_PERIOD = 1 << 10


class FamilySweep:
    def __init__(self, poset:GradedPoset, k_max:int) -> None:
        """
        Chain counts of all 2^|P| families in one pass.

        Bit t of a family mask stands for the t-th element of the rank-major
        linear extension, so the top bit of a mask is a maximal element x of
        the family S and c_k(S) = c_k(S - x) + c_{k-1}((S - x) & down(x)).
        Masks are visited in increasing (colex) order.

        Args:
            poset (GradedPoset): a poset with at most 16 elements.
            k_max (int): the largest chain size tabulated.
        """
        N = len(poset)

        if N > SWEEP_MAX:
            raise ResourceLimitError(" \
                [ERROR] FamilySweep: %d elements exceed the sweep bound %d. \
                "%(N, SWEEP_MAX)
            )

        if not isInteger(k_max) or k_max < 1:
            raise ValueError(" \
                [ERROR] FamilySweep: k_max must be a positive integer, got %r. \
                "%(k_max,)
            )

        self.poset = poset
        self.k_max = int(k_max)
        self.order = poset.linear_extension()

        pos = {x: t for t, x in enumerate(self.order)}
        down = [maskOf(pos[y] for y in bitsOf(poset.down_mask(x))) for x in self.order]

        table = np.zeros((self.k_max + 1, 1 << N), dtype=np.int64)
        table[0] = 1
        sizes = np.zeros(1 << N, dtype=np.int64)

        for t in range(N):
            lo, hi = 1 << t, 1 << (t + 1)
            rest = np.arange(lo, dtype=np.int64)
            below = rest & down[t]
            sizes[lo:hi] = sizes[:lo] + 1

            for k in range(1, self.k_max + 1):
                table[k, lo:hi] = table[k, :lo] + table[k - 1, below]

        self.table = table
        self.sizes = sizes

    def __len__(self) -> int:
        return self.table.shape[1]

    def counts(self, k:int) -> np.ndarray:
        return self.table[k]

    def members(self, mask:int) -> Tuple[int, ...]:
        """
        Element indices of the family with sweep mask `mask`.
        """
        return tuple(sorted(self.order[t] for t in bitsOf(int(mask))))

    def mask_of(self, members:Iterable[int]) -> int:
        pos = {x: t for t, x in enumerate(self.order)}

        return maskOf(pos[x] for x in members)

    def count(self, k:int, members:Iterable[int]) -> int:
        return int(self.table[k, self.mask_of(members)])

    def minimize(self, k:int, a:int) -> Tuple[int, np.ndarray]:
        """
        (min c_k, sweep masks of all minimizers) over the a-element families.
        """
        masks = np.flatnonzero(self.sizes == a)
        values = self.table[k, masks]
        best = int(values.min())

        return best, masks[values == best]


@dataclass
class MinimizationResult:
    poset: dict
    k: int
    a: int
    min_ck: int
    minimizer_count: int
    centred_count: int
    minimizers: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def all_minimizers_centred(self) -> bool:
        return self.centred_count == self.minimizer_count

    def record(self) -> dict:
        return {
            'poset': self.poset, 'k': self.k, 'a': self.a, 'min': self.min_ck,
            'minimizers': self.minimizer_count, 'all_centred': self.all_minimizers_centred,
            'sample': [list(m) for m in self.minimizers]
        }


def _classify(poset:GradedPoset, families:Iterable[Tuple[int, ...]], k:int, a:int, best:int) -> MinimizationResult:
    count, centred, sample = 0, 0, []

    for members in families:
        count += 1
        centred += is_centred_mask(poset, maskOf(members))[0]

        if len(sample) < MINIMIZER_MAX:
            sample.append(members)

    if count > MINIMIZER_MAX:
        warnings.warn(" \
            [WARN] exhaustive_minimize: %d minimizers for k=%d, a=%d; listing the first %d. \
            "%(count, k, a, MINIMIZER_MAX)
        )

    return MinimizationResult(poset.descriptor(), k, a, best, count, centred, sample)


@alias({'chain_size':'k', 'size':'a'})
def exhaustive_minimize(
    poset:GradedPoset,
    k:int,
    a:int,
    sweep:Optional[FamilySweep] = None,
    budget:int = COMBINATION_MAX
) -> MinimizationResult:
    """
    Minimum of c_k over ALL a-element families, with every minimizer
    classified as centred or not.

    Posets with at most 16 elements go through a FamilySweep; larger ones
    enumerate the C(|P|, a) families directly when that stays within `budget`.

    Raises:
        ResourceLimitError: when the families cannot be listed within budget.
    """
    N = len(poset)

    if not isInteger(a) or a < 0 or a > N:
        raise ValueError(" \
            [ERROR] exhaustive_minimize: a must lie in [0, %d], got %r. \
            "%(N, a)
        )

    if not isInteger(k) or k < 1:
        raise ValueError(" \
            [ERROR] exhaustive_minimize: k must be a positive integer, got %r. \
            "%(k,)
        )

    if sweep is None and N <= SWEEP_MAX:
        sweep = FamilySweep(poset, k)

    if sweep is not None:
        best, masks = sweep.minimize(k, a)

        return _classify(poset, (sweep.members(m) for m in masks), k, a, best)

    total = binom(N, a)

    if total > budget:
        raise ResourceLimitError(" \
            [ERROR] exhaustive_minimize: C(%d, %d) = %d families exceed the budget %d. \
            "%(N, a, total, budget)
        )

    best, found = None, []

    for members in itertools.combinations(range(N), a):
        c = chain_vector(poset, members, k)[k]

        if best is None or c < best:
            best, found = c, [members]
        elif c == best:
            found.append(members)

    return _classify(poset, found, k, a, best)


@dataclass
class Counterexample:
    poset: dict
    members: List[int]
    k: int
    ck: int
    mk: int
    seed: Optional[int] = None
    note: str = ''

    def record(self) -> dict:
        return {
            'poset': self.poset, 'members': list(self.members), 'k': self.k,
            'counts': {'c_k': self.ck, 'm_k': self.mk}, 'seed': self.seed, 'note': self.note
        }

    def save(self, path:str) -> None:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.record(), f, indent=2, sort_keys=True)


def replay_counterexample(record:Union[dict, str]) -> Counterexample:
    """
    Rebuild a counterexample from its record (or a JSON file path) with both
    counts recomputed from scratch.
    """
    if isinstance(record, str):
        with open(record, encoding='utf-8') as f:
            record = json.load(f)

    try:
        P = poset_from_descriptor(record['poset'])
        members, k = [int(x) for x in record['members']], int(record['k'])
    except KeyError as e:
        raise ValueError(" \
            [ERROR] replay_counterexample: the record lacks %s. \
            "%(e,)
        )

    A = Family(P, members)
    ck = count_chains(A, k) if len(A) else 0
    mk = mk_table(P, k)[len(A)]

    return Counterexample(P.descriptor(), sorted(A.members), k, ck, mk, record.get('seed'), record.get('note', ''))


@dataclass
class SuiteReport:
    poset: dict
    ks: Tuple[int, ...]
    table: List[Dict[str, Any]] = field(default_factory=list)
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def __bool__(self) -> bool:
        return self.passed

    def rows(self) -> List[Tuple[int, int, int, int, int, int]]:
        """
        (k, a, min c_k, m_k, minimizers, all-centred flag) per entry.
        """
        return [
            (r['k'], r['a'], r['min'], r['m_k'], r['minimizers'], int(r['all_centred']))
            for r in self.table
        ]

    def record(self) -> dict:
        return {
            'poset': self.poset, 'k': list(self.ks), 'passed': self.passed,
            'table': self.table, 'counterexamples': [c.record() for c in self.counterexamples]
        }


def verify_kleitman_suite(poset:GradedPoset, k_range:Iterable[int]) -> SuiteReport:
    """
    For every a in [0, |P|] and k in `k_range`, compare the exhaustive
    minimum of c_k over a-element families with m_k(a), and when m_k(a) > 0,
    k >= 2 and the poset is strictly descending, require every minimizer to
    be centred.

    Returns:
        report (SuiteReport): the full table; one counterexample per failing
            (k, a) with a witness family.
    """
    ks = tuple(sorted(set(int(k) for k in k_range)))

    if not ks or ks[0] < 1:
        raise ValueError(" \
            [ERROR] verify_kleitman_suite: k values must be positive, got %r. \
            "%(ks,)
        )

    sweep = FamilySweep(poset, ks[-1])
    strict = check_descending(poset).strict
    report = SuiteReport(poset.descriptor(), ks)

    for k in ks:
        table = mk_table(poset, k)

        for a in range(len(poset) + 1):
            res = exhaustive_minimize(poset, k, a, sweep)
            mk = table[a]
            need_centred = mk > 0 and k >= 2 and strict
            ok = res.min_ck == mk and (not need_centred or res.all_minimizers_centred)

            report.table.append({
                'k': k, 'a': a, 'min': res.min_ck, 'm_k': mk, 'minimizers': res.minimizer_count,
                'all_centred': res.all_minimizers_centred, 'ok': ok
            })

            if ok:
                continue

            if res.min_ck != mk:
                witness, note = res.minimizers[0], 'minimum differs from m_k'
            else:
                witness = next((m for m in res.minimizers if not is_centred_mask(poset, maskOf(m))[0]), res.minimizers[0])
                note = 'non-centred minimizer'

            report.counterexamples.append(
                Counterexample(poset.descriptor(), list(witness), k, sweep.count(k, witness), mk, None, note)
            )

    return report


def erdos_katona_check(n:int, exhaustive:Optional[bool] = None) -> PropertyReport:
    """
    On the boolean lattice of rank n, a family with C(n, n//2) + t sets has
    at least t * ceil((n+1)/2) 2-chains, with equality for centred families,
    for every t up to the next breakpoint. With `exhaustive` (default when
    2^n <= 16), the minima are also recomputed over all families.
    """
    P = BooleanLattice(n)
    table = mk_table(P, 2)
    bps = breakpoints(P)
    mid = binom(n, n // 2)
    slope = ceil((n + 1) / 2)
    end = bps[min(2, n + 1)]
    values = {}

    for t in range(end - mid + 1):
        values[t] = table[mid + t]

        if values[t] != t * slope:
            return PropertyReport('Erdos-Katona', False, (t, values[t], t * slope), {'n': n})

    if exhaustive is None:
        exhaustive = (1 << n) <= SWEEP_MAX

    if exhaustive:
        sweep = FamilySweep(P, 2)

        for t in values:
            best, _ = sweep.minimize(2, mid + t)

            if best != values[t]:
                return PropertyReport('Erdos-Katona', False, ('exhaustive', t, best, values[t]), {'n': n})

    return PropertyReport('Erdos-Katona', True, details={'n': n, 'values': values, 'exhaustive': exhaustive})


@dataclass
class SearchProbe:
    poset: dict
    strategy: str
    k: int
    a: int
    budget: int
    seed: Optional[int]
    start_ck: int
    best_ck: int
    best: List[int]
    mk: int
    steps: int = 0
    counterexample: Optional[Counterexample] = None

    @property
    def sound(self) -> bool:
        return self.counterexample is None and self.best_ck >= self.mk

    def record(self) -> dict:
        return {
            'poset': self.poset, 'strategy': self.strategy, 'k': self.k, 'a': self.a,
            'budget': self.budget, 'seed': self.seed, 'steps': self.steps, 'start': self.start_ck,
            'best': self.best_ck, 'm_k': self.mk, 'members': list(self.best),
            'counterexample': None if self.counterexample is None else self.counterexample.record()
        }


class _SwapState:
    def __init__(self, poset:GradedPoset, k:int, members:Iterable[int]) -> None:
        """
        A family under single-element swaps with c_k kept up to date by
        adding and removing the k-chains through the swapped elements.
        """
        self.poset = poset
        self.k = k
        self.inside = list(members)
        self.outside = sorted(set(range(len(poset))) - set(self.inside))
        self.mask = maskOf(self.inside)
        self.value = self.recount()

    def recount(self) -> int:
        return chain_vector(self.poset, self.inside, self.k)[self.k]

    def through(self, x:int, mask:int) -> int:
        """
        Number of k-chains of the family `mask` + {x} that contain x.
        """
        P, k = self.poset, self.k
        down = chain_vector(P, bitsOf(P.down_mask(x) & mask), k - 1)
        up = chain_vector(P, bitsOf(P.up_mask(x) & mask), k - 1)

        return sum(down[j] * up[k - 1 - j] for j in range(k))

    def propose(self, rng:random.Random) -> Tuple[int, int, int]:
        """
        A random swap (slot in, slot out) and the c_k it would lead to.
        """
        s, t = rng.randrange(len(self.inside)), rng.randrange(len(self.outside))
        x, y = self.inside[s], self.outside[t]
        rest = self.mask & ~(1 << x)

        return s, t, self.value - self.through(x, rest) + self.through(y, rest)

    def apply(self, s:int, t:int, value:int) -> None:
        x, y = self.inside[s], self.outside[t]
        self.inside[s], self.outside[t] = y, x
        self.mask = (self.mask & ~(1 << x)) | (1 << y)
        self.value = value


@alias({'chain_size':'k', 'size':'a', 'steps':'budget'})
def probe_minimize(
    poset:GradedPoset,
    k:int,
    a:int,
    strategy:str = 'hill_climb',
    budget:int = 10 ** 5,
    seed:Union[int, random.Random, None] = 0,
    patience:int = 2000,
    t0:float = 2.0,
    t1:float = 0.01,
    artifact:Optional[str] = None
) -> SearchProbe:
    """
    Local search for an a-element family with few k-chains, moving by
    swapping one member for one non-member.

    Args:
        poset (GradedPoset): the poset.
        k (int): chain size.
        a (int): family size.
        strategy (str): 'hill_climb' (sideways moves allowed, random restart
            after `patience` steps without improvement), 'anneal' (geometric
            temperature from `t0` down to `t1`) or 'exhaustive'.
        budget (int): number of proposed swaps.
        seed (int): seed of the run.
        artifact (str, optional): JSON path a counterexample is written to.

    Returns:
        probe (SearchProbe): the best family found. A value below m_k(a)
            is recounted from scratch and, if confirmed, attached as a
            counterexample and the search stops.
    """
    if strategy not in ('hill_climb', 'anneal', 'exhaustive'):
        raise ValueError(" \
            [ERROR] probe_minimize: unknown strategy `%s`. \
            "%(strategy)
        )

    N = len(poset)

    if not isInteger(a) or a < 0 or a > N:
        raise ValueError(" \
            [ERROR] probe_minimize: a must lie in [0, %d], got %r. \
            "%(N, a)
        )

    if not isInteger(budget) or budget < 0:
        raise ValueError(" \
            [ERROR] probe_minimize: budget must be a non-negative integer, got %r. \
            "%(budget,)
        )

    mk = mk_table(poset, k)[a]
    desc = poset.descriptor()
    seed_value = seed if isInteger(seed) else None

    if strategy == 'exhaustive':
        res = exhaustive_minimize(poset, k, a)

        return SearchProbe(
            desc, strategy, k, a, budget, seed_value, res.min_ck, res.min_ck,
            list(res.minimizers[0]), mk, binom(N, a)
        )

    rng = rngOf(seed)
    state = _SwapState(poset, k, rng.sample(range(N), a))
    probe = SearchProbe(desc, strategy, k, a, budget, seed_value, state.value, state.value, sorted(state.inside), mk)

    if a in (0, N):
        return probe

    alpha = (t1 / t0) ** (1.0 / max(budget, 1))
    temp, stale = t0, 0

    for step in range(1, budget + 1):
        s, t, value = state.propose(rng)
        diff = value - state.value

        if strategy == 'hill_climb':
            accept = diff <= 0
        else:
            accept = diff <= 0 or rng.random() < np.exp(-diff / temp)
            temp *= alpha

        if accept:
            state.apply(s, t, value)

        if step % AUDIT_PERIOD == 0 and state.recount() != state.value:
            raise PropertyViolation(
                "[ERROR] probe_minimize: incremental count %d drifted from %d at step %d"%(
                    state.value, state.recount(), step
                ),
                (desc, sorted(state.inside), k)
            )

        probe.steps = step

        if state.value < probe.best_ck:
            probe.best_ck, probe.best, stale = state.value, sorted(state.inside), 0
        else:
            stale += 1

        if probe.best_ck < mk:
            exact = chain_vector(poset, probe.best, k)[k]

            if exact != probe.best_ck:
                raise PropertyViolation(
                    "[ERROR] probe_minimize: incremental count %d differs from recount %d"%(probe.best_ck, exact),
                    (desc, probe.best, k)
                )

            probe.counterexample = Counterexample(desc, probe.best, k, exact, mk, seed_value, strategy)
            warnings.warn(" \
                [WARN] probe_minimize: family with %d < m_k = %d chains; replay it to confirm. \
                "%(exact, mk)
            )

            if artifact is not None:
                probe.counterexample.save(artifact)

            break

        if strategy == 'hill_climb' and stale >= patience:
            state = _SwapState(poset, k, rng.sample(range(N), a))
            stale = 0

    return probe
