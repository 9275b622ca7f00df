"""Exact polynomial engine for the deformed binomial equations.

The deformation of the cyclic quotient singularity attached to a pair
(a, k) with k in K_r(a) is governed by the chain of polynomials
P_0, ..., P_{r+1} in Z[t, z0, z1] defined by P_0 = 1, P_1 = z1 and

    P_{i-1} * P_{i+1} = P_i^{a_i} + t * P_i^{k_i} * z0^{(a_i-k_i)*E_i},

where E_i = Z(a_2..a_{i-1}) is a continuant of the interior of the chain.
Every division in this recursion is exact, z0 never divides a P_i, setting
t = 0 collapses P_i to the single monomial z1^{Z(a_1..a_{i-1})}, and the
last polynomial factors completely into the grouped form

    P_{r+1} = prod_j (P_j^{a_j-k_j} + t * z0^{(a_j-k_j)*E_j})^{Z(k_1..k_{j-1})}

(factors with a_j = k_j are skipped).  All of this is checked here with
exact integer arithmetic; any failure signals invalid input or a bug, never
a rounding problem.

Polynomials are sparse dictionaries keyed by exponent triples packed into a
single integer (21 bits per variable), so monomial multiplication is
integer addition.  Sizes grow quickly with the chain; the practical range
is sum(a_i) up to the mid-twenties, and ``deformation_chain`` enforces a
configurable cap on Z(a) = deg_z1 P_{r+1}.
"""

import heapq
from dataclasses import dataclass

from .contfrac import hj_expand, is_admissible, z_value
from .errors import DegreeCapError, VerificationError
from .zeroseq import _as_k_tuple, _check_a_chain

DEFAULT_DEGREE_CAP = 500

_BITS = 21
_MASK = (1 << _BITS) - 1


def _key(dt: int, d0: int, d1: int) -> int:
    if dt < 0 or d0 < 0 or d1 < 0 or dt > _MASK or d0 > _MASK or d1 > _MASK:
        raise DegreeCapError(f"exponent triple ({dt},{d0},{d1}) outside the packed range")
    return (dt << (2 * _BITS)) | (d0 << _BITS) | d1


def _split(key: int) -> tuple[int, int, int]:
    return key >> (2 * _BITS), (key >> _BITS) & _MASK, key & _MASK


class MultiPoly:
    """Sparse polynomial in (t, z0, z1) with big-integer coefficients.

    Immutable by convention; no zero terms are stored.  Exponent triples
    are (deg_t, deg_z0, deg_z1).
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        data: dict[int, int] = {}
        if terms:
            for (dt, d0, d1), c in terms.items():
                c = int(c)
                if c == 0:
                    continue
                key = _key(int(dt), int(d0), int(d1))
                v = data.get(key, 0) + c
                if v:
                    data[key] = v
                else:
                    data.pop(key, None)
        self._t = data

    @classmethod
    def _raw(cls, data: dict[int, int]) -> "MultiPoly":
        obj = object.__new__(cls)
        obj._t = data
        return obj

    @classmethod
    def monomial(cls, dt: int, d0: int, d1: int, coeff: int = 1) -> "MultiPoly":
        return cls._raw({_key(dt, d0, d1): coeff}) if coeff else cls._raw({})

    @property
    def terms(self) -> dict[tuple[int, int, int], int]:
        return {_split(k): c for k, c in self._t.items()}

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._t == other._t

    __hash__ = None

    def __len__(self) -> int:
        return len(self._t)

    def max_degrees(self) -> tuple[int, int, int]:
        mt = m0 = m1 = 0
        for k in self._t:
            dt, d0, d1 = _split(k)
            if dt > mt:
                mt = dt
            if d0 > m0:
                m0 = d0
            if d1 > m1:
                m1 = d1
        return mt, m0, m1

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MultiPoly._raw(out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly._raw({})
        sa, sb = self.max_degrees(), other.max_degrees()
        if any(x + y > _MASK for x, y in zip(sa, sb)):
            raise DegreeCapError("product exponents exceed the packed range")
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                kk = k1 + k2
                v = out.get(kk)
                if v is None:
                    out[kk] = c1 * c2
                else:
                    v += c1 * c2
                    if v:
                        out[kk] = v
                    else:
                        del out[kk]
        return MultiPoly._raw(out)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = MultiPoly._raw({_key(0, 0, 0): 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, dt: int, d0: int, d1: int) -> "MultiPoly":
        """Multiply by the monomial t^dt * z0^d0 * z1^d1."""
        off = _key(dt, d0, d1)
        mt, m0, m1 = self.max_degrees()
        if mt + dt > _MASK or m0 + d0 > _MASK or m1 + d1 > _MASK:
            raise DegreeCapError("shifted exponents exceed the packed range")
        return MultiPoly._raw({k + off: c for k, c in self._t.items()})

    def at_t_zero(self) -> "MultiPoly":
        return MultiPoly._raw({k: c for k, c in self._t.items() if (k >> (2 * _BITS)) == 0})

    def z0_divides(self) -> bool:
        """Whether z0 divides this polynomial (the zero polynomial counts)."""
        return all((k >> _BITS) & _MASK for k in self._t)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact quotient self / divisor, or raise VerificationError.

        Single-divisor reduction in lexicographic monomial order on
        (t, z0, z1), which is just integer ordering of the packed keys.
        For an exact quotient the leading term is divisible at every step,
        so any failure means the division is inexact.
        """
        g = divisor._t
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        glead = max(g)
        gt, g0, g1 = _split(glead)
        gc = g[glead]
        work = dict(self._t)
        heap = [-k for k in work]
        heapq.heapify(heap)
        out: dict[int, int] = {}
        while heap:
            m = -heapq.heappop(heap)
            c = work.get(m)
            if not c:
                continue
            mt, m0, m1 = _split(m)
            if mt < gt or m0 < g0 or m1 < g1 or c % gc:
                raise VerificationError("inexact polynomial division")
            qk = m - glead
            qc = c // gc
            out[qk] = qc
            for k2, c2 in g.items():
                kk = qk + k2
                v = work.get(kk, 0) - qc * c2
                if v:
                    work[kk] = v
                    heapq.heappush(heap, -kk)
                else:
                    work.pop(kk, None)
        return MultiPoly._raw(out)

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for k in sorted(self._t, reverse=True):
            dt, d0, d1 = _split(k)
            c = self._t[k]
            factors = []
            if dt:
                factors.append("t" if dt == 1 else f"t^{dt}")
            if d0:
                factors.append("z0" if d0 == 1 else f"z0^{d0}")
            if d1:
                factors.append("z1" if d1 == 1 else f"z1^{d1}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


ONE = MultiPoly({(0, 0, 0): 1})
T = MultiPoly({(1, 0, 0): 1})
Z0 = MultiPoly({(0, 1, 0): 1})
Z1 = MultiPoly({(0, 0, 1): 1})


@dataclass(frozen=True)
class WeightVector:
    """Weights w_0..w_{r+1} of the chain coordinates, with w_0 = w_1 = 1."""

    w: tuple[int, ...]


def _interior_exponent(a: tuple[int, ...], i: int) -> int:
    """E_i = Z(a_2 .. a_{i-1}); zero for i = 1, one for i = 2."""
    if i == 1:
        return 0
    return z_value(a[1 : i - 1])


def weights(a, p: int, q: int) -> WeightVector:
    """Coordinate weights w_i = Z(a_1..a_{i-1}) - Z(a_2..a_{i-1}).

    Requires a to be the HJ expansion of p/(p-q); the computed vector is
    validated against the full monotonicity chain 1 = w_0 = w_1 <= ... <=
    w_{r+1} = q and any mismatch is an input-consistency error.
    """
    a = _check_a_chain(a)
    if hj_expand(p, p - q) != a:
        raise ValueError(f"{a} is not the expansion of {p}/{p - q}")
    r = len(a)
    w = [1, 1]
    for i in range(2, r + 2):
        w.append(z_value(a[: i - 1]) - z_value(a[1 : i - 1]))
    if any(w[i] > w[i + 1] for i in range(1, r + 1)) or w[r + 1] != q:
        raise ValueError(f"weight chain validation failed for a={a}, p={p}, q={q}")
    return WeightVector(tuple(w))


def z0_exponents(a) -> tuple[int, ...]:
    """The interior continuants (Z(a_2..a_{i-1}))_{i=2..r+1}.

    These are the z0-exponents appearing in the rational form of the chain
    coordinates; they must increase strictly and end at p - q.
    """
    a = _check_a_chain(a)
    r = len(a)
    out = tuple(_interior_exponent(a, i) for i in range(2, r + 2))
    if any(x >= y for x, y in zip(out, out[1:])):
        raise VerificationError(f"interior continuants of {a} are not strictly increasing")
    if out[-1] != z_value(a[1:]):
        raise VerificationError(f"interior continuant chain of {a} has a wrong endpoint")
    return out


def deformation_chain(a, k, degree_cap: int = DEFAULT_DEGREE_CAP) -> tuple[MultiPoly, ...]:
    """The polynomial chain P_0, ..., P_{r+1} for k in K_r(a).

    Each step divides P_i^{a_i} + t * P_i^{k_i} * z0^{(a_i-k_i)*E_i}
    exactly by P_{i-1} and checks that z0 does not divide the quotient.
    Inexactness or a z0 factor can only come from invalid input or an
    implementation bug and raises VerificationError.
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    r = len(a)
    if len(k) != r:
        raise ValueError(f"length mismatch: a has {r} entries, k has {len(k)}")
    if any(ki > ai for ki, ai in zip(k, a)):
        raise ValueError(f"k={k} is not bounded by a={a}")
    p = z_value(a)
    if p > degree_cap:
        raise DegreeCapError(
            f"Z(a) = {p} exceeds the degree cap {degree_cap}; raise the cap to proceed"
        )
    chain = [ONE, Z1]
    for i in range(1, r + 1):
        ai, ki = a[i - 1], k[i - 1]
        pk = chain[i] ** ki
        body = pk * (chain[i] ** (ai - ki)) if ai > ki else pk
        numer = body + pk.shift(1, (ai - ki) * _interior_exponent(a, i), 0)
        nxt = numer.exact_div(chain[i - 1])
        if nxt.z0_divides():
            raise VerificationError(f"z0 divides P_{i + 1} for a={a}, k={k}")
        chain.append(nxt)
    return tuple(chain)


def verify_factorization(a, k, chain=None, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """Check the complete factorization of the last chain polynomial.

    The grouped right-hand side multiplies, over the indices j with
    a_j > k_j, the factors P_j^{a_j-k_j} + t * z0^{(a_j-k_j)*E_j}, each
    raised to the continuant Z(k_1..k_{j-1}).  Collapsing the root factors
    pairwise keeps everything inside Z[t, z0, z1].
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    if chain is None:
        chain = deformation_chain(a, k, degree_cap=degree_cap)
    r = len(a)
    rhs = ONE
    for j in range(1, r + 1):
        d = a[j - 1] - k[j - 1]
        if d == 0:
            continue
        factor = chain[j] ** d + MultiPoly.monomial(1, d * _interior_exponent(a, j), 0)
        rhs = rhs * (factor ** z_value(k[: j - 1]))
    lhs = chain[r + 1]
    if lhs.max_degrees() != rhs.max_degrees():
        return False
    return lhs == rhs


def check_valuation_bound(x, nu) -> bool:
    """Instance check of the valuation inequality used by the chain.

    Hypothesis: nu[i+1] >= x_i * nu[i] - nu[i-1] for all i.  Conclusion:
    nu[i+1] >= Z(x_i..x_1) * nu[1] - Z(x_i..x_2) * nu[0].  Returns whether
    this implication instance holds (vacuously true when the hypothesis
    fails).
    """
    x = tuple(int(v) for v in x)
    nu = tuple(int(v) for v in nu)
    if not is_admissible(x):
        raise ValueError(f"{x} is not admissible")
    if len(nu) != len(x) + 2:
        raise ValueError("nu must have length len(x) + 2")
    n = len(x)
    hypothesis = all(nu[i + 1] >= x[i - 1] * nu[i] - nu[i - 1] for i in range(1, n + 1))
    if not hypothesis:
        return True
    # reversal symmetry of continuants lets us evaluate on forward slices
    conclusion = all(
        nu[i + 1] >= z_value(x[:i]) * nu[1] - z_value(x[1:i]) * nu[0] for i in range(1, n + 1)
    )
    return conclusion
