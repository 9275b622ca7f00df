"""Hirzebruch-Jung continued fraction calculus.

A Hirzebruch-Jung (HJ) continued fraction is the minus-sign expansion

    [x1, ..., xn] = x1 - 1/(x2 - 1/( ... - 1/xn)).

Its value is the ratio Z(x1..xn) / Z(x2..xn) of continuants, where Z obeys
the three-term recursion Z_i = x_i * Z_{i-1} - Z_{i-2} with Z_{-1} = 0 and
Z_0 = 1.  Z(x1..xn) equals the determinant of the tridiagonal matrix with
diagonal (x1..xn) and off-diagonal entries -1, and is symmetric under
reversal of the sequence.  Continuants are the bookkeeping device for the
whole package: admissibility of a sequence, the lattice polylines of cone
boundaries, deformation-polynomial exponents and intersection lattices all
reduce to continuant identities.

Sequences are plain tuples of integers.  Three flavours occur downstream
(they share this carrier):

* b-chains: the HJ expansion of p/q, entries >= 2;
* a-chains: the HJ expansion of p/(p-q), entries >= 2, dual to the b-chain
  under Riemenschneider's point diagram;
* k-chains: admissible sequences representing 0, see ``zeroseq``.
"""

from dataclasses import dataclass
from math import gcd

HJSequence = tuple[int, ...]


@dataclass(frozen=True)
class Fraction:
    """Reduced integer fraction with denominator >= 0.

    Denominator 0 (with numerator normalised to +-1) encodes the value of a
    continued-fraction tail whose lower continuant vanishes.  All fractions
    arising from coprime p > q > 0 inputs are finite.
    """

    numerator: int
    denominator: int

    def __post_init__(self):
        n, d = self.numerator, self.denominator
        if d == 0:
            if n == 0:
                raise ValueError("0/0 is not a valid fraction")
            n = 1 if n > 0 else -1
        else:
            if d < 0:
                n, d = -n, -d
            g = gcd(abs(n), d)
            if g > 1:
                n //= g
                d //= g
            if n == 0:
                d = 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "denominator", d)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf" if self.numerator > 0 else "-inf"
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class EdgeData:
    """Run-length form of an a-chain.

    An a-chain decomposes uniquely as

        ( (2)^{m1-1}, n1, (2)^{m2-1}, n2, ..., nt, (2)^{m_{t+1}-1} )

    with every n_j >= 3 and every m_i >= 1.  Geometrically t counts the
    interior vertices of the supplementary-cone polyline and the m_i are the
    integral edge lengths.
    """

    m: tuple[int, ...]
    n: tuple[int, ...]
    t_count: int


def z_value(x) -> int:
    """Continuant Z(x1..xn); the empty sequence has Z = 1."""
    zm2, zm1 = 0, 1
    for xi in x:
        zm2, zm1 = zm1, xi * zm1 - zm2
    return zm1


def z_prefixes(x) -> list[int]:
    """All leading continuants [Z_0, Z_1(x1), ..., Z_n(x1..xn)]."""
    out = [1]
    zm2, zm1 = 0, 1
    for xi in x:
        zm2, zm1 = zm1, xi * zm1 - zm2
        out.append(zm1)
    return out


def hj_eval(x) -> Fraction:
    """Value of [x1, ..., xn] as a reduced Fraction.

    The value is Z(x1..xn) / Z(x2..xn); a vanishing lower continuant gives
    the infinite fraction.  The empty sequence has no defined value.
    """
    x = tuple(x)
    if not x:
        raise ValueError("hj_eval of the empty sequence is undefined")
    num = z_value(x)
    den = z_value(x[1:])
    if num == 0 and den == 0:
        raise ValueError(f"value of {x} is undefined (0/0)")
    return Fraction(num, den)


def _check_coprime_pair(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise ValueError("p and q must be integers")
    if not p > q > 0:
        raise ValueError(f"need p > q > 0, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")


def hj_expand(p: int, q: int) -> HJSequence:
    """The unique HJ expansion of p/q with all entries >= 2.

    Computed by the ceiling-division recursion x1 = ceil(p/q), then invert
    the remaining tail; the denominators strictly decrease, so this
    terminates.
    """
    _check_coprime_pair(p, q)
    out = []
    while q:
        x = -(-p // q)
        out.append(x)
        p, q = q, x * q - p
    return tuple(out)


def is_admissible(x) -> bool:
    """Whether the tridiagonal matrix of x is positive semi-definite of
    rank >= n-1.

    Decided by the leading-principal-minor rule for Jacobi matrices: every
    proper leading continuant must be positive and the full one
    non-negative.  In particular (0) is admissible while (2,1,1,1,1,2) is
    not, although the latter also represents 0.
    """
    x = tuple(x)
    n = len(x)
    zm2, zm1 = 0, 1
    for i, xi in enumerate(x, start=1):
        zm2, zm1 = zm1, xi * zm1 - zm2
        if i < n and zm1 <= 0:
            return False
    return zm1 >= 0


def edge_data(a) -> EdgeData:
    """Decompose an a-chain into runs of 2's separated by entries >= 3."""
    a = tuple(a)
    if not a:
        raise ValueError("edge data needs a nonempty sequence")
    if any(ai < 2 for ai in a):
        raise ValueError(f"all entries must be >= 2, got {a}")
    m, n = [], []
    twos = 0
    for ai in a:
        if ai == 2:
            twos += 1
        else:
            m.append(twos + 1)
            n.append(ai)
            twos = 0
    m.append(twos + 1)
    return EdgeData(tuple(m), tuple(n), len(n))


def riemenschneider_dual(a) -> HJSequence:
    """The point-diagram dual: if [a] = p/(p-q) then the result expands p/q.

    Reassembled from the edge data: the first and last edge lengths enter
    with +1, interior ones with +2, separated by runs of 2's of length
    n_j - 3.  The map is an involution on chains with entries >= 2.
    """
    ed = edge_data(a)
    b = [ed.m[0] + 1]
    for nj, mj in zip(ed.n, ed.m[1:]):
        b.extend([2] * (nj - 3))
        b.append(mj + 2)
    b[-1] -= 1
    return tuple(b)


def q_conjugate(p: int, q: int) -> int:
    """The unique 0 < q' < p with q*q' = 1 mod p."""
    _check_coprime_pair(p, q)
    return pow(q, -1, p)
