from chainmin.misc import *
from chainmin.core._poset import GradedPoset, ExplicitPoset, ChainPoset
from chainmin.core.field import GaloisField, prime_power, enumerate_rref, span_codes, vec2de, rref


ELEMENT_MAX = 1 << 16
SPACE_MAX = 1 << 14


def _check_ranks(tag:str, n:int, i:int, j:int) -> None:
    if not all(isInteger(v) for v in (n, i, j)):
        raise ValueError(" \
            [ERROR] %s: n, i, j must be integers. \
            "%(tag)
        )

    if i == j or min(i, j) < 0 or max(i, j) > n:
        raise ValueError(" \
            [ERROR] %s: ranks (%d, %d) must be distinct and lie in [0, %d]. \
            "%(tag, i, j, n)
        )


def boolean_c2_prime(n:int, i:int, j:int) -> int:
    """
    Number of j-subsets of [n] comparable to a fixed i-subset.

    Args:
        n (int): size of the ground set.
        i, j (int): distinct ranks in [0, n].

    Returns:
        count (int): C(n-i, j-i) when j > i, C(i, j) when j < i.
    """
    _check_ranks('boolean_c2_prime', n, i, j)

    if j > i:
        return binom(n - i, j - i)

    return binom(i, j)


def gaussian_binomial(m:int, r:int, q:int) -> int:
    """
    Number of r-dimensional subspaces of an m-dimensional space over GF(q).

    Zero when r lies outside [0, m].
    """
    if r < 0 or r > m:
        return 0

    num, den = 1, 1

    for l in range(r):
        num *= q ** m - q ** l
        den *= q ** r - q ** l

    return num // den


def subspace_c2_prime(q:int, n:int, i:int, j:int) -> int:
    """
    Number of j-dimensional subspaces of GF(q)^n comparable to a fixed
    i-dimensional one: [n-i, j-i]_q above it, [i, j]_q below it.
    """
    if prime_power(q) is None:
        raise ValueError(" \
            [ERROR] subspace_c2_prime: field size %r is not a prime power. \
            "%(q,)
        )

    _check_ranks('subspace_c2_prime', n, i, j)

    if j > i:
        return gaussian_binomial(n - i, j - i, q)

    return gaussian_binomial(i, j, q)


class BooleanLattice(GradedPoset):
    closed_form = True

    @posetinit({'dim':'n', 'size':'n'})
    def __init__(
        self,
        n:int,
        **kwargs
    ) -> None:
        """
        Subsets of {1, ..., n} ordered by inclusion.

        Element x is the subset whose bitmask is x (bit t stands for t+1), so
        indices coincide with mask values and rank is popcount.

        Args:
            n | dim | size (int): size of the ground set.
        """
        if not isInteger(n) or n < 0:
            raise ValueError(" \
                [ERROR] BooleanLattice: `n` must be a non-negative integer. \
            ")

        self.dim = int(n)

        super().__init__(**kwargs)

    def _base_height(self) -> Optional[int]:
        return self.dim

    def _base_elements(self) -> list:
        if 1 << self.dim > ELEMENT_MAX:
            raise ResourceLimitError(" \
                [ERROR] BooleanLattice: 2^%d elements exceed the enumeration bound %d. \
                "%(self.dim, ELEMENT_MAX)
            )

        return list(range(1 << self.dim))

    def _base_ranks(self, labels:list) -> Sequence[int]:
        return [popcount(x) for x in labels]

    def _base_order(self) -> np.ndarray:
        idx = np.arange(1 << self.dim)

        return ((idx[:, None] & idx[None, :]) == idx[:, None]) & (idx[:, None] != idx[None, :])

    def _level_formula(self, i:int) -> Optional[int]:
        return binom(self.dim, i)

    def _c2_formula(self, i:int, j:int) -> Optional[int]:
        return boolean_c2_prime(self.dim, i, j)

    def _sample_chain(self, rng) -> Optional[CHAIN]:
        order = list(range(self.dim))
        rng.shuffle(order)
        chain, mask = [0], 0

        for t in order:
            mask |= 1 << t
            chain.append(mask)

        return tuple(chain)

    def subset(self, x:int) -> frozenset:
        """
        The subset of {1, ..., n} encoded by element `x`.
        """
        return frozenset(t + 1 for t in bitsOf(x))

    def descriptor(self) -> dict:
        return {'type': 'boolean', 'n': self.dim}


class SubspaceLattice(GradedPoset):
    closed_form = True

    @posetinit({'field_size':'q', 'dim':'n'})
    def __init__(
        self,
        q:int,
        n:int,
        **kwargs
    ) -> None:
        """
        Subspaces of GF(q)^n ordered by inclusion.

        Elements are reduced row echelon bases (tuples of rows), listed by
        dimension and then lexicographically. Containment U < W is decided
        by membership of U's basis rows in the span of W.

        Args:
            q | field_size (int): a prime power.
            n | dim (int): dimension of the ambient space.
        """
        if not isInteger(n) or n < 0:
            raise ValueError(" \
                [ERROR] SubspaceLattice: `n` must be a non-negative integer. \
            ")

        if prime_power(q) is None:
            raise ValueError(" \
                [ERROR] SubspaceLattice: field size %r is not a prime power. \
                "%(q,)
            )

        self.q = int(q)
        self.dim = int(n)
        self._field = None

        super().__init__(**kwargs)

    @property
    def field(self) -> GaloisField:
        if self._field is None:
            self._field = GaloisField(self.q)

        return self._field

    def _base_height(self) -> Optional[int]:
        return self.dim

    def _base_elements(self) -> list:
        if self.q ** self.dim > SPACE_MAX:
            raise ResourceLimitError(" \
                [ERROR] SubspaceLattice: q^n = %d exceeds the enumeration bound %d. \
                "%(self.q ** self.dim, SPACE_MAX)
            )

        total = sum(gaussian_binomial(self.dim, k, self.q) for k in range(self.dim + 1))

        if total > ELEMENT_MAX:
            raise ResourceLimitError(" \
                [ERROR] SubspaceLattice: %d subspaces exceed the enumeration bound %d. \
                "%(total, ELEMENT_MAX)
            )

        labels = []

        for k in range(self.dim + 1):
            labels.extend(sorted(enumerate_rref(self.dim, k, self.field)))

        return labels

    def _base_ranks(self, labels:list) -> Sequence[int]:
        return [len(basis) for basis in labels]

    def _base_order(self) -> np.ndarray:
        F, n = self.field, self.dim
        N = len(self._labels)
        member = np.zeros((N, self.q ** n), dtype=bool)

        for w, basis in enumerate(self._labels):
            member[w, span_codes(basis, F, n)] = True

        less = np.zeros((N, N), dtype=bool)

        for u, basis in enumerate(self._labels):
            codes = [vec2de(row, self.q) for row in basis]
            less[u] = member[:, codes].all(axis=1) & (self._ranks > len(basis))

        return less

    def _level_formula(self, i:int) -> Optional[int]:
        return gaussian_binomial(self.dim, i, self.q)

    def _c2_formula(self, i:int, j:int) -> Optional[int]:
        return subspace_c2_prime(self.q, self.dim, i, j)

    def basis(self, x:int) -> Tuple[Tuple[int, ...], ...]:
        return self.label(x)

    def subspace_of(self, rows:Any) -> int:
        """
        Element index of the span of `rows`.
        """
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim)

        return self.index(rref(rows, self.field))

    def descriptor(self) -> dict:
        return {'type': 'subspace', 'q': self.q, 'n': self.dim}


def enumerate_subspaces(q:int, n:int) -> SubspaceLattice:
    """
    Build the subspace lattice of GF(q)^n with its ground set enumerated.

    Raises:
        ResourceLimitError: when q^n exceeds 2^14.
    """
    P = SubspaceLattice(q, n)
    len(P)

    return P


def poset_from_descriptor(desc:Union[str, dict]) -> GradedPoset:
    """
    Build a poset from a descriptor string (`boolean:N`, `subspace:Q,N`,
    `chain:N`) or dict (`{"type": "boolean", "n": N}` and alike).
    """
    if isinstance(desc, str):
        kind, _, args = desc.strip().partition(':')

        try:
            values = [int(v) for v in args.split(',')] if args else []
        except ValueError:
            raise ValueError(" \
                [ERROR] poset_from_descriptor: malformed descriptor `%s`. \
                "%(desc)
            )

        kind = kind.lower()

        if kind in ('boolean', 'chain') and len(values) == 1:
            desc = {'type': kind, 'n': values[0]}
        elif kind == 'subspace' and len(values) == 2:
            desc = {'type': kind, 'q': values[0], 'n': values[1]}
        else:
            raise ValueError(" \
                [ERROR] poset_from_descriptor: malformed descriptor `%s`. \
                "%(desc)
            )

    if not isinstance(desc, dict) or 'type' not in desc:
        raise ValueError(" \
            [ERROR] poset_from_descriptor: a descriptor needs a `type`. \
        ")

    kind = str(desc['type']).lower()

    try:
        if kind == 'boolean':
            return BooleanLattice(n=desc['n'])

        if kind == 'subspace':
            return SubspaceLattice(q=desc['q'], n=desc['n'])

        if kind == 'chain':
            return ChainPoset(n=desc['n'])

        if kind == 'explicit':
            labels = list(desc['labels'])
            relations = [(labels[a], labels[b]) for a, b in desc.get('relations', [])]

            return ExplicitPoset(labels=labels, relations=relations)
    except KeyError as e:
        raise ValueError(" \
            [ERROR] poset_from_descriptor: missing field %s for type `%s`. \
            "%(e, kind)
        )

    raise ValueError(" \
        [ERROR] poset_from_descriptor: unknown poset type `%s`. \
        "%(kind)
    )
