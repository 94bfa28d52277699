from chainmin.misc import *


FIELD_MAX = 256


def de2vec(x:Union[int, np.ndarray], base:int, length:int) -> np.ndarray:
    """
    Base-`base` digits of `x`, least significant first.

    Args:
        x (int | ndarray): non-negative integer(s).
        base (int): the radix.
        length (int): number of digits kept.

    Returns:
        digits (ndarray): shape (length,) for a scalar, (len(x), length) otherwise.
    """
    X = np.array(x, dtype=np.int64).reshape(-1)
    res = np.zeros((X.size, length), dtype=np.int64)

    for i in range(length):
        res[:, i], X = X % base, X // base

    return res[0] if np.ndim(x) == 0 else res


def vec2de(v:np.ndarray, base:int) -> Union[int, np.ndarray]:
    V = np.asarray(v, dtype=np.int64)
    weights = base ** np.arange(V.shape[-1], dtype=np.int64)

    if V.ndim == 1:
        return int(V @ weights)

    return V @ weights


def prime_power(q:int) -> Optional[Tuple[int, int]]:
    """
    Return (p, m) with q = p**m for a prime p, or None.
    """
    if not isInteger(q) or q < 2:
        return None

    p = next(d for d in range(2, q + 1) if q % d == 0)
    m = 0

    while q % p == 0:
        q //= p
        m += 1

    return (p, m) if q == 1 else None


def _poly_mul(a:np.ndarray, b:np.ndarray, modulus:np.ndarray, p:int, m:int) -> np.ndarray:
    prod = np.convolve(a, b) % p

    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]

        if c:
            prod[d - m:d] = (prod[d - m:d] - c * modulus[:m]) % p
            prod[d] = 0

    return prod[:m]


class GaloisField:
    def __init__(self, q:int) -> None:
        """
        The finite field with `q` elements, encoded as the integers 0..q-1.

        An element is the polynomial over Z/p whose coefficients are its
        base-p digits; products are reduced modulo the first monic
        polynomial of degree m (in digit order) that yields no zero divisors.
        Arithmetic is carried out through precomputed numpy tables.

        Args:
            q (int): a prime power, at most 256.
        """
        pm = prime_power(q)

        if pm is None:
            raise ValueError(" \
                [ERROR] GaloisField: field size %r is not a prime power. \
                "%(q,)
            )

        if q > FIELD_MAX:
            raise ResourceLimitError(" \
                [ERROR] GaloisField: field size %d exceeds the table bound %d. \
                "%(q, FIELD_MAX)
            )

        self.q = int(q)
        self.p, self.m = pm

        digits = de2vec(np.arange(self.q), self.p, self.m)
        weights = self.p ** np.arange(self.m, dtype=np.int64)

        self.add = ((digits[:, None, :] + digits[None, :, :]) % self.p) @ weights
        self.neg = ((-digits) % self.p) @ weights
        self.modulus, self.mul = self._find_modulus(digits)

        nonzero = np.arange(1, self.q)
        self.inv = np.zeros(self.q, dtype=np.int64)
        self.inv[nonzero] = np.argmax(self.mul[nonzero] == 1, axis=1)

    def _find_modulus(self, digits:np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        p, m, q = self.p, self.m, self.q

        for low in range(q):
            modulus = np.append(de2vec(low, p, m), 1)
            mul = np.zeros((q, q), dtype=np.int64)

            for a in range(q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = vec2de(_poly_mul(digits[a], digits[b], modulus, p, m), p)

            if np.all(mul[1:, 1:] != 0):
                return modulus, mul

        raise ValueError(" \
            [ERROR] GaloisField: no irreducible polynomial of degree %d over Z/%d. \
            "%(m, p)
        )

    def __repr__(self) -> str:
        return "GaloisField(%d)"%(self.q)

    def __len__(self) -> int:
        return self.q

    def sub(self, a:Any, b:Any) -> Any:
        return self.add[a, self.neg[b]]

    def div(self, a:Any, b:Any) -> Any:
        if np.any(np.asarray(b) == 0):
            raise ValueError(" \
                [ERROR] GaloisField: division by zero. \
            ")

        return self.mul[a, self.inv[b]]

    def check_axioms(self) -> PropertyReport:
        """
        Check the field axioms on the arithmetic tables.
        """
        add, mul, q = self.add, self.mul, self.q
        elems = np.arange(q)

        if not (np.array_equal(add, add.T) and np.array_equal(mul, mul.T)):
            return PropertyReport('field axioms', False, 'commutativity')

        if not (np.array_equal(add[0], elems) and np.array_equal(mul[1], elems)):
            return PropertyReport('field axioms', False, 'identity')

        if not np.all(add[elems, self.neg] == 0):
            return PropertyReport('field axioms', False, 'additive inverse')

        if not np.all(mul[elems[1:], self.inv[1:]] == 1):
            return PropertyReport('field axioms', False, 'multiplicative inverse')

        for c in range(q):
            if not np.array_equal(add[:, c][add], add[:, add[:, c]]):
                return PropertyReport('field axioms', False, ('add associativity', c))

            if not np.array_equal(mul[:, c][mul], mul[:, mul[:, c]]):
                return PropertyReport('field axioms', False, ('mul associativity', c))

            if not np.array_equal(mul[:, add[:, c]], add[mul, mul[:, c][:, None]]):
                return PropertyReport('field axioms', False, ('distributivity', c))

        return PropertyReport('field axioms', True, details={'q': q, 'modulus': self.modulus.tolist()})


def rref(rows:Any, F:GaloisField) -> Tuple[Tuple[int, ...], ...]:
    """
    Reduced row echelon form over `F` with zero rows dropped.

    Args:
        rows (array-like): an (r, n) matrix of field element codes.
        F (GaloisField): the field.

    Returns:
        basis (tuple): canonical basis of the row space as a tuple of rows.
    """
    A = np.array(rows, dtype=np.int64)

    if A.size == 0:
        return ()

    if A.ndim != 2 or A.min() < 0 or A.max() >= F.q:
        raise ValueError(" \
            [ERROR] rref: rows must form a matrix of elements of GF(%d). \
            "%(F.q)
        )

    r = 0

    for c in range(A.shape[1]):
        if r == A.shape[0]:
            break

        nz = np.flatnonzero(A[r:, c])

        if len(nz) == 0:
            continue

        t = r + int(nz[0])
        A[[r, t]] = A[[t, r]]
        A[r] = F.mul[F.inv[A[r, c]], A[r]]

        others = np.flatnonzero(A[:, c])
        others = others[others != r]

        if len(others):
            A[others] = F.add[A[others], F.mul[F.neg[A[others, c]][:, None], A[r][None, :]]]

        r += 1

    return tuple(tuple(int(v) for v in row) for row in A[:r])


def span_codes(basis:Sequence[Sequence[int]], F:GaloisField, n:int) -> np.ndarray:
    """
    Integer codes (base q, first coordinate least significant) of every
    vector in the span of `basis`, sorted.
    """
    k = len(basis)

    if k == 0:
        return np.zeros(1, dtype=np.int64)

    B = np.asarray(basis, dtype=np.int64)
    coeffs = de2vec(np.arange(F.q ** k), F.q, k)
    acc = np.zeros((F.q ** k, n), dtype=np.int64)

    for r in range(k):
        acc = F.add[acc, F.mul[coeffs[:, r][:, None], B[r][None, :]]]

    return np.sort(vec2de(acc, F.q))


def enumerate_rref(n:int, k:int, F:GaloisField) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """
    Every k-dimensional subspace of F^n, as its reduced row echelon basis.

    Pivot sets are visited in lexicographic order; within a pivot set the
    free entries (right of a row's pivot, outside pivot columns) run over F.
    """
    for piv in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]

        for values in itertools.product(range(F.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]

            for r in range(k):
                rows[r][piv[r]] = 1

            for (r, c), v in zip(free, values):
                rows[r][c] = v

            yield tuple(tuple(row) for row in rows)
