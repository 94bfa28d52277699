from chainmin.misc import *


MATRIX_MAX = 4096


class GradedPoset:
    closed_form = False

    def __init__(self, **kwargs) -> None:
        """
        Basic structure of a finite graded poset on the ground set {0, ..., N-1}.

        All subclasses should overwrite
            1) `_base_elements`, the element labels in canonical index order.
            2) `_base_ranks`, the rank of each label, in the same order.
            3) `_base_order`, a boolean (N, N) matrix with [x, y] True iff x < y.

        Subclasses that know their height without listing their elements may
        overwrite `_base_height` as well; the ground set is then enumerated
        on first use. Closed forms for level sizes and for c_2'(i, j) are
        exposed through `_level_formula` and `_c2_formula`.
        """
        if not hasattr(self, 'poset_type'):
            self.poset_type = self.__class__.__name__

        self._labels = None
        self._index = None
        self._ranks = None
        self._levels = None
        self._positions = None
        self._less = None
        self._down_masks = None
        self._up_masks = None
        self._cache = {}

        self.n = self._base_height()

        if self.n is None:
            self._build_elements()
        elif self.n < 0:
            raise ValueError(" \
                [ERROR] %s: height parameter `n` can't be negative. \
                "%(self.poset_type)
            )

    def _base_height(self) -> Optional[int]:
        return None

    def _base_elements(self) -> list:
        raise NotImplementedError

    def _base_ranks(self, labels:list) -> Sequence[int]:
        raise NotImplementedError

    def _base_order(self) -> np.ndarray:
        raise NotImplementedError

    def _level_formula(self, i:int) -> Optional[int]:
        return None

    def _c2_formula(self, i:int, j:int) -> Optional[int]:
        return None

    def _sample_chain(self, rng:random.Random) -> Optional[CHAIN]:
        return None

    def _build_elements(self) -> None:
        labels = list(self._base_elements())

        if len(labels) == 0:
            raise ValueError(" \
                [ERROR] %s: a poset needs at least one element. \
                "%(self.poset_type)
            )

        ranks = np.asarray(self._base_ranks(labels), dtype=np.int64)

        if ranks.shape != (len(labels),):
            raise ValueError(" \
                [ERROR] %s: every element needs exactly one rank. \
                "%(self.poset_type)
            )

        n = int(ranks.max())

        if self.n != None and n != self.n:
            raise ValueError(" \
                [ERROR] %s: elements reach rank %d, expected height %d. \
                "%(self.poset_type, n, self.n + 1)
            )

        levels = tuple(tuple(int(x) for x in np.flatnonzero(ranks == i)) for i in range(n + 1))

        if ranks.min() < 0 or any(len(lv) == 0 for lv in levels):
            raise ValueError(" \
                [ERROR] %s: the rank function must be onto [0, %d]. \
                "%(self.poset_type, n)
            )

        self.n = n
        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self._ranks = ranks
        self._levels = levels

        order = [x for lv in levels for x in lv]
        self._positions = np.empty(len(labels), dtype=np.int64)
        self._positions[order] = np.arange(len(labels))

    def _elements(self) -> None:
        if self._labels is None:
            self._build_elements()

    def _order(self) -> np.ndarray:
        if self._less is not None:
            return self._less

        self._elements()

        if len(self._labels) > MATRIX_MAX:
            raise ResourceLimitError(" \
                [ERROR] %s: %d elements exceed the comparability matrix bound %d. \
                "%(self.poset_type, len(self._labels), MATRIX_MAX)
            )

        less = np.asarray(self._base_order(), dtype=bool)
        N = len(self._labels)

        if less.shape != (N, N):
            raise ValueError(" \
                [ERROR] %s: the order matrix must have shape (%d, %d). \
                "%(self.poset_type, N, N)
            )

        if np.any(less & (self._ranks[:, None] >= self._ranks[None, :])):
            raise ValueError(" \
                [ERROR] %s: x < y must imply rank(x) < rank(y). \
                "%(self.poset_type)
            )

        self._less = less

        return less

    def _masks(self) -> None:
        if self._down_masks is not None:
            return

        less = self._order()
        self._up_masks = [maskOf(np.flatnonzero(row)) for row in less]
        self._down_masks = [maskOf(np.flatnonzero(col)) for col in less.T]

    def __len__(self) -> int:
        self._elements()

        return len(self._labels)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self)))

    def __repr__(self) -> str:
        return "%s(%s)"%(self.poset_type, self.descriptor())

    def descriptor(self) -> dict:
        """
        Return a JSON-friendly description from which the poset can be rebuilt.
        """
        return {'type': self.poset_type.lower(), 'n': self.n}

    def label(self, x:int) -> Any:
        self._elements()

        return self._labels[x]

    def index(self, label:Any) -> int:
        self._elements()

        if label not in self._index:
            raise ValueError(" \
                [ERROR] %s: `%r` is not an element of the poset. \
                "%(self.poset_type, label)
            )

        return self._index[label]

    def rank(self, x:int) -> int:
        self._elements()

        return int(self._ranks[x])

    def ranks(self) -> np.ndarray:
        self._elements()

        return self._ranks

    def level(self, i:int) -> Tuple[int, ...]:
        """
        Return the indices of the elements of rank `i`, in increasing order.
        """
        if i < 0 or i > self.n:
            return ()

        self._elements()

        return self._levels[i]

    def level_mask(self, i:int) -> int:
        key = ('level_mask', i)

        if key not in self._cache:
            self._cache[key] = maskOf(self.level(i))

        return self._cache[key]

    def level_size(self, i:int) -> int:
        if i < 0 or i > self.n:
            return 0

        s = self._level_formula(i)

        if s != None:
            return s

        return len(self.level(i))

    def level_sizes(self) -> Tuple[int, ...]:
        return tuple(self.level_size(i) for i in range(self.n + 1))

    def position(self, x:int) -> int:
        """
        Position of `x` in the rank-major linear extension of the order.
        """
        self._elements()

        return int(self._positions[x])

    def linear_extension(self) -> Tuple[int, ...]:
        self._elements()

        return tuple(x for lv in self._levels for x in lv)

    def less(self, x:int, y:int) -> bool:
        return bool(self._order()[x, y])

    def leq(self, x:int, y:int) -> bool:
        return x == y or self.less(x, y)

    def comparable(self, x:int, y:int) -> bool:
        return self.less(x, y) or self.less(y, x)

    def down_mask(self, x:int) -> int:
        """
        Bitmask (over element indices) of the elements strictly below `x`.
        """
        self._masks()

        return self._down_masks[x]

    def up_mask(self, x:int) -> int:
        self._masks()

        return self._up_masks[x]

    def down(self, x:int) -> Tuple[int, ...]:
        return tuple(bitsOf(self.down_mask(x)))

    def up(self, x:int) -> Tuple[int, ...]:
        return tuple(bitsOf(self.up_mask(x)))

    def covers(self, x:int) -> Tuple[int, ...]:
        """
        Elements of rank r(x)+1 lying above `x`.
        """
        up = self.up_mask(x)

        return tuple(y for y in self.level(self.rank(x) + 1) if up >> y & 1)

    def is_chain(self, xs:Iterable[int]) -> bool:
        xs = sorted(set(xs), key=self.position)

        return all(self.less(xs[t], xs[t + 1]) for t in range(len(xs) - 1))

    def c2_prime(self, i:int, j:int, method:str = 'auto') -> int:
        """
        Number of elements of rank `j` comparable to a fixed element of rank `i`.

        Args:
            i, j (int): distinct ranks in [0, n].
            method (str): 'formula' uses the closed form, 'count' counts above
                (or below) the least-indexed element of rank `i`, 'auto' prefers
                the closed form when one exists.
        """
        if i == j or min(i, j) < 0 or max(i, j) > self.n:
            raise ValueError(" \
                [ERROR] c2_prime: ranks (%s, %s) must be distinct and lie in [0, %d]. \
                "%(i, j, self.n)
            )

        if method not in ('auto', 'formula', 'count'):
            raise ValueError(" \
                [ERROR] c2_prime: unknown method `%s`. \
                "%(method)
            )

        if method != 'count':
            v = self._c2_formula(i, j)

            if v != None:
                return v

            if method == 'formula':
                raise ValueError(" \
                    [ERROR] c2_prime: %s has no closed form for c_2'. \
                    "%(self.poset_type)
                )

        key = ('c2', i, j)

        if key not in self._cache:
            x = self.level(i)[0]
            mask = self.up_mask(x) if j > i else self.down_mask(x)
            self._cache[key] = sum(1 for y in self.level(j) if mask >> y & 1)

        return self._cache[key]

    def without(self, elements:Iterable[int]) -> 'ExplicitPoset':
        """
        Induced subposet on the remaining elements, with ranks recomputed.
        """
        drop = set(int(x) for x in elements)
        keep = [x for x in self if x not in drop]
        less = self._order()
        relations = [
            (self.label(x), self.label(y)) for x in keep for y in keep if less[x, y]
        ]

        return ExplicitPoset(labels=[self.label(x) for x in keep], relations=relations)

    def validate(self) -> PropertyReport:
        """
        Check the partial order axioms and gradedness of the poset.

        Returns:
            report (PropertyReport): fails with the first offending pair or element.
        """
        less = self._order()
        ranks = self._ranks
        li = less.astype(np.int64)

        if np.any(np.diag(less)):
            x = int(np.flatnonzero(np.diag(less))[0])
            return PropertyReport('graded poset', False, ('reflexive', x))

        if np.any(less & less.T):
            x, y = map(int, np.argwhere(less & less.T)[0])
            return PropertyReport('graded poset', False, ('antisymmetry', x, y))

        broken = ((li @ li) > 0) & ~less

        if np.any(broken):
            x, y = map(int, np.argwhere(broken)[0])
            return PropertyReport('graded poset', False, ('transitivity', x, y))

        step = less & (ranks[None, :] == ranks[:, None] + 1)
        si = step.astype(np.int64)
        longer = less & (ranks[None, :] > ranks[:, None] + 1)
        bridged = (si @ li) > 0

        if np.any(longer & ~bridged):
            x, y = map(int, np.argwhere(longer & ~bridged)[0])
            return PropertyReport('graded poset', False, ('gap', x, y))

        for x in self:
            if ranks[x] < self.n and not np.any(step[x]):
                return PropertyReport('graded poset', False, ('maximal below top', x))

            if ranks[x] > 0 and not np.any(step[:, x]):
                return PropertyReport('graded poset', False, ('minimal above bottom', x))

        return PropertyReport('graded poset', True, details={'size': len(self), 'height': self.n + 1})


class ExplicitPoset(GradedPoset):
    @posetinit({'elements':'labels', 'order':'relations'})
    def __init__(
        self,
        labels:Sequence[Any],
        relations:Iterable[Tuple[Any, Any]] = (),
        **kwargs
    ) -> None:
        """
        A poset given by its elements and a generating set of strict relations.

        The relation is closed transitively and ranks are computed as the
        length of the longest chain strictly below each element.

        Args:
            labels | elements (list): hashable element labels.
            relations | order (iterable): pairs (a, b) meaning a < b.
        """
        self.labels = list(labels)
        index = {label: i for i, label in enumerate(self.labels)}

        if len(index) != len(self.labels):
            raise ValueError(" \
                [ERROR] ExplicitPoset: element labels must be distinct. \
            ")

        N = len(self.labels)
        less = np.zeros((N, N), dtype=bool)

        for a, b in relations:
            if a not in index or b not in index:
                raise ValueError(" \
                    [ERROR] ExplicitPoset: relation (%r, %r) uses an unknown element. \
                    "%(a, b)
                )

            less[index[a], index[b]] = True

        for m in range(N):
            less |= less[:, m][:, None] & less[m, :][None, :]

        if np.any(np.diag(less)):
            raise ValueError(" \
                [ERROR] ExplicitPoset: the relations contain a cycle. \
            ")

        ranks = np.zeros(N, dtype=np.int64)

        for y in sorted(range(N), key=lambda y: int(less[:, y].sum())):
            below = np.flatnonzero(less[:, y])
            ranks[y] = ranks[below].max() + 1 if len(below) else 0

        self.relation = less
        self.rank_vector = ranks

        super().__init__(**kwargs)

    def _base_elements(self) -> list:
        return self.labels

    def _base_ranks(self, labels:list) -> Sequence[int]:
        return self.rank_vector

    def _base_order(self) -> np.ndarray:
        return self.relation

    def descriptor(self) -> dict:
        pairs = np.argwhere(self.relation)

        return {
            'type': 'explicit',
            'labels': [str(label) for label in self.labels],
            'relations': [[int(a), int(b)] for a, b in pairs]
        }


class ChainPoset(GradedPoset):
    closed_form = True

    @posetinit({'dim':'n'})
    def __init__(
        self,
        n:int,
        **kwargs
    ) -> None:
        """
        The total order 0 < 1 < ... < n.

        Args:
            n | dim (int): the top element (the height is n+1).
        """
        self.top = n

        super().__init__(**kwargs)

    def _base_height(self) -> Optional[int]:
        return self.top

    def _base_elements(self) -> list:
        return list(range(self.top + 1))

    def _base_ranks(self, labels:list) -> Sequence[int]:
        return list(range(self.top + 1))

    def _base_order(self) -> np.ndarray:
        idx = np.arange(self.top + 1)

        return idx[:, None] < idx[None, :]

    def _level_formula(self, i:int) -> Optional[int]:
        return 1

    def _c2_formula(self, i:int, j:int) -> Optional[int]:
        return 1

    def descriptor(self) -> dict:
        return {'type': 'chain', 'n': self.n}
