from chainmin.misc import *
from chainmin.core._poset import GradedPoset


class Family:
    def __init__(self, poset:GradedPoset, members:Iterable[int] = ()) -> None:
        """
        A subfamily of the ground set of a graded poset.

        Args:
            poset (GradedPoset): the ambient poset.
            members (iterable): element indices in [0, |P|).
        """
        if not isinstance(poset, GradedPoset):
            raise ValueError(" \
                [ERROR] Family: `%r` is not a graded poset. \
                "%(poset)
            )

        members = frozenset(int(x) for x in members)
        N = len(poset)

        if any(x < 0 or x >= N for x in members):
            raise ValueError(" \
                [ERROR] Family: members must be element indices in [0, %d). \
                "%(N)
            )

        self.poset = poset
        self.members = members

    @classmethod
    def from_mask(cls, poset:GradedPoset, mask:int) -> 'Family':
        return cls(poset, bitsOf(mask))

    @classmethod
    def levels(cls, poset:GradedPoset, I:Iterable[int]) -> 'Family':
        """
        Union of the full levels whose ranks are listed in `I`.
        """
        I = toRankSet(I, poset.n, 'Family.levels')

        return cls(poset, (x for i in I for x in poset.level(i)))

    @classmethod
    def full(cls, poset:GradedPoset) -> 'Family':
        return cls(poset, range(len(poset)))

    @property
    def mask(self) -> int:
        return maskOf(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members, key=self.poset.position))

    def __contains__(self, x:int) -> bool:
        return x in self.members

    def __eq__(self, other:Any) -> bool:
        if not isinstance(other, Family):
            return NotImplemented

        return self.poset is other.poset and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.poset), self.members))

    def __repr__(self) -> str:
        return "Family(%r, %r)"%(self.poset, sorted(self.members))

    def complement(self) -> 'Family':
        return Family(self.poset, (x for x in self.poset if x not in self.members))

    def ranks(self) -> RANKSET:
        """
        Ranks of the levels met by the family.
        """
        return tuple(sorted(set(self.poset.rank(x) for x in self.members)))

    def rank_counts(self) -> Tuple[int, ...]:
        """
        Number of members on each level 0..n.
        """
        counts = [0] * (self.poset.n + 1)

        for x in self.members:
            counts[self.poset.rank(x)] += 1

        return tuple(counts)

    def full_levels(self) -> RANKSET:
        return tuple(
            i for i, s in enumerate(self.rank_counts()) if s == self.poset.level_size(i)
        )

    def labels(self) -> List[Any]:
        return [self.poset.label(x) for x in self]
