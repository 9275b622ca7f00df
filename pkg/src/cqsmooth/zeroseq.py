"""Zero-representing sequences, polygon triangulations, incidence matrices.

K_r is the set of admissible length-r integer sequences whose HJ value is 0.
Its elements biject with triangulations of a convex (r+1)-gon with vertices
A_1, ..., A_{r+1}: the sequence entry k_i counts the triangles at vertex
A_i.  K_r(a) is the subset bounded entrywise by an a-chain; it parametrises
both the smoothing components of the cyclic quotient singularity of that
chain and the Stein fillings of its link.

From a triangulation one builds the sign-incidence matrix D(k): one row per
vertex A_1..A_r, one column per triangle, where the vertices of a triangle
receive signs +1, -1, +1 in polygon order (vertex A_{r+1} is dropped).
Appending all-ones blocks of widths a_i - k_i gives the block matrix
D(a; k), and cumulative row sums of that give a 0/1 matrix: the incidence
matrix of a picture deformation, recording which deformed discs pass
through which of the n = r - 1 + sum(a_i - k_i) points.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .contfrac import hj_eval, is_admissible

# The triangulation route is exact but Catalan-sized; beyond this polygon
# size enumerate_K switches to the pruned continuant search.
_TRIANGULATION_ROUTE_LIMIT = 12
_ENUMERATION_LIMIT = 14


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense exact-integer matrix (tuple of row tuples)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match declared dimensions")

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        nrows = len(entries)
        ncols = len(entries[0]) if entries else 0
        return cls(nrows, ncols, entries)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else ())

    def mul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.entries else []
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries
        )
        return IntegerMatrix(self.rows, other.cols, out)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.entries)) if self.cols else ()

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    def perm_eq(self, other: "IntegerMatrix") -> bool:
        """Equality up to a permutation of columns."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return sorted(self.columns()) == sorted(other.columns())

    def column_order(self) -> tuple[int, ...]:
        """Permutation sorting the columns lexicographically."""
        cols = self.columns()
        return tuple(sorted(range(self.cols), key=lambda j: cols[j]))

    def permute_columns(self, order) -> "IntegerMatrix":
        out = tuple(tuple(row[j] for j in order) for row in self.entries)
        return IntegerMatrix(self.rows, self.cols, out)


def continuant_matrix(x) -> IntegerMatrix:
    """The tridiagonal matrix with diagonal x and off-diagonal -1."""
    x = tuple(x)
    n = len(x)
    rows = [
        tuple(x[i] if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    ]
    return IntegerMatrix(n, n, tuple(rows))


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of a convex polygon, as sorted vertex triples."""

    polygon_size: int
    triangles: frozenset

    def __post_init__(self):
        n = self.polygon_size
        if n < 3:
            raise ValueError("a triangulation needs a polygon with at least 3 vertices")
        if len(self.triangles) != n - 2:
            raise ValueError(f"a {n}-gon triangulation has {n - 2} triangles")
        for tri in self.triangles:
            i, j, k = tri
            if not (1 <= i < j < k <= n):
                raise ValueError(f"bad triangle {tri} in a {n}-gon")

    def diagonals(self) -> tuple[tuple[int, int], ...]:
        n = self.polygon_size
        sides = {(i, i + 1) for i in range(1, n)} | {(1, n)}
        edges = set()
        for i, j, k in self.triangles:
            edges.update([(i, j), (j, k), (i, k)])
        return tuple(sorted(edges - sides))


@dataclass(frozen=True)
class ZeroSequence:
    """An admissible sequence with HJ value 0 (an element of K_r)."""

    k: tuple[int, ...]

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        object.__setattr__(self, "k", k)
        if not k:
            raise ValueError("a zero sequence has length >= 1")
        if not is_admissible(k):
            raise ValueError(f"{k} is not admissible")
        val = hj_eval(k)
        if (val.numerator, val.denominator) != (0, 1):
            raise ValueError(f"{k} does not represent 0")

    @property
    def r(self) -> int:
        return len(self.k)

    def reversed(self) -> "ZeroSequence":
        return ZeroSequence(self.k[::-1])

    def __iter__(self):
        return iter(self.k)

    def __len__(self):
        return len(self.k)

    def __getitem__(self, i):
        return self.k[i]


def _as_k_tuple(k) -> tuple[int, ...]:
    if isinstance(k, ZeroSequence):
        return k.k
    return ZeroSequence(tuple(k)).k


def _check_a_chain(a) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a:
        raise ValueError("an a-chain has length >= 1")
    if any(ai < 2 for ai in a):
        raise ValueError(f"a-chain entries must be >= 2, got {a}")
    return a


@lru_cache(maxsize=None)
def _tilings(lo: int, hi: int):
    """All triangulations of the convex polygon on vertices lo..hi."""
    if hi - lo < 2:
        return (frozenset(),)
    out = []
    for mid in range(lo + 1, hi):
        for left in _tilings(lo, mid):
            for right in _tilings(mid, hi):
                out.append(left | right | {(lo, mid, hi)})
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_triangulations(polygon_size: int) -> tuple[Triangulation, ...]:
    """All triangulations, ordered lexicographically by sorted diagonal lists."""
    if polygon_size < 3:
        raise ValueError("polygon size must be >= 3")
    if polygon_size > _ENUMERATION_LIMIT:
        raise ValueError(
            f"refusing to enumerate the {catalan(polygon_size - 2)} triangulations "
            f"of a {polygon_size}-gon (limit {_ENUMERATION_LIMIT})"
        )
    thetas = [Triangulation(polygon_size, fs) for fs in _tilings(1, polygon_size)]
    thetas.sort(key=lambda th: th.diagonals())
    return tuple(thetas)


def triangulation_to_k(theta: Triangulation) -> ZeroSequence:
    """Count triangles at A_1..A_r; the count at A_{r+1} is dropped."""
    r = theta.polygon_size - 1
    counts = [0] * r
    for tri in theta.triangles:
        for v in tri:
            if v <= r:
                counts[v - 1] += 1
    return ZeroSequence(tuple(counts))


def triangulation_from_k(k) -> Triangulation:
    """Reconstruct the unique triangulation with the given vertex counts.

    Works by ear peeling: a vertex contained in exactly one triangle is an
    ear, its triangle is forced to be (previous, vertex, next) in the
    current polygon, and removing it leaves a smaller instance.  Successful
    completion certifies that k lies in K_r.
    """
    k = tuple(int(x) for x in k)
    r = len(k)
    if r < 2:
        raise ValueError("ear peeling needs a polygon, so r >= 2")
    n = r + 1
    total = 3 * (n - 2)
    last = total - sum(k)
    counts = dict(zip(range(1, n), k))
    counts[n] = last
    if any(c < 1 for c in counts.values()):
        raise ValueError(f"{k} is not realizable by a triangulation")
    active = list(range(1, n + 1))
    triangles = []
    while len(active) > 3:
        ear = None
        for idx, v in enumerate(active):
            if counts[v] == 1:
                ear = idx
                break
        if ear is None:
            raise ValueError(f"{k} is not realizable by a triangulation")
        v = active[ear]
        prev = active[ear - 1]
        nxt = active[(ear + 1) % len(active)]
        triangles.append(tuple(sorted((prev, v, nxt))))
        counts[prev] -= 1
        counts[nxt] -= 1
        if counts[prev] < 1 or counts[nxt] < 1:
            raise ValueError(f"{k} is not realizable by a triangulation")
        del active[ear]
    if any(counts[v] != 1 for v in active):
        raise ValueError(f"{k} is not realizable by a triangulation")
    triangles.append(tuple(sorted(active)))
    return Triangulation(n, frozenset(triangles))


def _bounded_zero_sequences(a: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Depth-first search for all k <= a in K_r via prefix continuants.

    A sequence is admissible with value 0 exactly when all proper leading
    continuants are positive and the full one vanishes; the positivity
    requirement prunes the search hard, and the last entry is forced by
    divisibility.  Equivalent to filtering the triangulation bijection but
    usable for long chains.
    """
    r = len(a)
    out = []
    k = [0] * r

    def rec(i: int, zm2: int, zm1: int) -> None:
        if i == r:
            if zm2 % zm1 == 0:
                kr = zm2 // zm1
                if 1 <= kr <= a[r - 1]:
                    k[r - 1] = kr
                    out.append(tuple(k))
            return
        for v in range(1, a[i - 1] + 1):
            z = v * zm1 - zm2
            if z > 0:
                k[i - 1] = v
                rec(i + 1, zm1, z)

    rec(1, 0, 1)
    out.sort()
    return out


def enumerate_K(a) -> tuple[ZeroSequence, ...]:
    """All k in K_r with k <= a entrywise, in lexicographic order.

    K_1 is the single sequence (0).  For moderate r the set is obtained by
    filtering the triangulation bijection; for long chains an equivalent
    pruned search over prefix continuants is used (the two routes agree,
    see the tests).
    """
    a = _check_a_chain(a)
    r = len(a)
    if r == 1:
        return (ZeroSequence((0,)),)
    if r + 1 <= _TRIANGULATION_ROUTE_LIMIT:
        ks = sorted(
            triangulation_to_k(theta).k
            for theta in enumerate_triangulations(r + 1)
        )
        ks = [k for k in ks if all(ki <= ai for ki, ai in zip(k, a))]
    else:
        ks = _bounded_zero_sequences(a)
    return tuple(ZeroSequence(k) for k in ks)


def all_zero_sequences(r: int) -> tuple[ZeroSequence, ...]:
    """All of K_r, via exhaustive triangulation enumeration."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return (ZeroSequence((0,)),)
    ks = sorted(triangulation_to_k(theta).k for theta in enumerate_triangulations(r + 1))
    return tuple(ZeroSequence(k) for k in ks)


def sign_incidence(theta: Triangulation) -> IntegerMatrix:
    """Sign-incidence matrix D(k): rows A_1..A_r, one signed column per
    triangle (+1, -1, +1 on its vertices in polygon order), triangles in
    lexicographic order."""
    r = theta.polygon_size - 1
    cols = []
    for tri in sorted(theta.triangles):
        col = [0] * r
        for sign, v in zip((1, -1, 1), tri):
            if v <= r:
                col[v - 1] = sign
        cols.append(tuple(col))
    entries = tuple(zip(*cols)) if cols else tuple(() for _ in range(r))
    return IntegerMatrix(r, len(cols), entries)


def block_matrix(a, k, theta: Triangulation | None = None) -> IntegerMatrix:
    """The block matrix D(a; k) = (D(k) | ones blocks of widths a_i - k_i).

    The i-th appended block has a_i - k_i columns that are all zero except
    for ones in row i.  If no triangulation is supplied the unique one for
    k is reconstructed (r = 1 needs none: D(k) is empty there).
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    r = len(a)
    if len(k) != r:
        raise ValueError(f"length mismatch: a has {r} entries, k has {len(k)}")
    if any(ki > ai for ki, ai in zip(k, a)):
        raise ValueError(f"k={k} is not bounded by a={a}")
    if r == 1:
        d_cols: list[tuple[int, ...]] = []
    else:
        if theta is None:
            theta = triangulation_from_k(k)
        elif triangulation_to_k(theta).k != k:
            raise ValueError("supplied triangulation does not realize k")
        d_cols = list(sign_incidence(theta).columns())
    for i in range(r):
        col = tuple(1 if j == i else 0 for j in range(r))
        d_cols.extend([col] * (a[i] - k[i]))
    entries = tuple(zip(*d_cols)) if d_cols else tuple(() for _ in range(r))
    return IntegerMatrix(r, len(d_cols), entries)


def cumsum_rows(mat: IntegerMatrix) -> IntegerMatrix:
    """Matrix whose i-th row is the sum of the first i rows of the input."""
    out = []
    acc = [0] * mat.cols
    for row in mat.entries:
        acc = [s + x for s, x in zip(acc, row)]
        out.append(tuple(acc))
    return IntegerMatrix(mat.rows, mat.cols, tuple(out))


def weights_l(a) -> tuple[int, ...]:
    """The decorations l_i = 2 + sum_{j<=i} (a_j - 2)."""
    a = _check_a_chain(a)
    out = []
    acc = 2
    for ai in a:
        acc += ai - 2
        out.append(acc)
    return tuple(out)


def incidence_matrix(a, k, theta: Triangulation | None = None) -> IntegerMatrix:
    """The 0/1 incidence matrix of the picture deformation for (a, k)."""
    return cumsum_rows(block_matrix(a, k, theta))
