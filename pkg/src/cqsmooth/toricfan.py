"""Smooth complete fans attached to zero sequences and chart pullbacks.

A sequence k in K_r determines a smooth complete fan refining the standard
fan of the projective plane: in the basis (u_1, u_{r+1}) = ((1,0), (0,1))
with u_0 = (-1,-1), the interior rays obey

    u_0 + u_2 = (k_1 - 1) u_1,   u_{j-1} + u_{j+1} = k_j u_j,
    u_{r+1} + u_1 = -u_0,

and in closed form u_j = Z(k_1..k_{j-1}) u_1 + Z(k_2..k_{j-1}) u_{r+1}.
Existence of this fan (all rays primitive, adjacent pairs unimodular, the
closing relations satisfied) is exactly membership of k in K_r.

Each two-dimensional cone (u_j, u_{j+1}) carries affine coordinates
(x_j, y_j); pulling the chain coordinates z_i back through the monomial
chart map factors them as x^m * y^m' * Q with polynomial Q not divisible
by x or y.  The x-exponents form the table

    m_i^(j) = Z(k_{i+1}..k_{j-1})   for i <= j,
    m_i^(j) = -Z(a_{j+1}..a_{i-1})  for i > j,

and restricting Q to x = 0 exhibits, for i > j, a power of the binomial
c2 * y^(a_j - k_j) + c3 * t whose roots are the points where the chain map
is undefined; each chart has exactly a_j - k_j of them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction as QQ
from math import comb, gcd

from .conegeom import LatticeVector
from .contfrac import z_value
from .deformpoly import DEFAULT_DEGREE_CAP, deformation_chain
from .errors import VerificationError
from .zeroseq import _as_k_tuple, _check_a_chain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fan:
    """Rays u_0, ..., u_{r+1} of a smooth complete fan, in rotation order."""

    rays: tuple[LatticeVector, ...]


@dataclass(frozen=True)
class ChartExponentTable:
    """Chart exponents m_i^(j), rows i = 1..r+1, columns j = 1..r+1.

    Column r+1 extends the two-sided continuant formula to the second
    coordinate of the last chart.
    """

    m: tuple[tuple[int, ...], ...]

    def value(self, i: int, j: int) -> int:
        return self.m[i - 1][j - 1]


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in (x, y) with Z[t] coefficients; terms are keyed
    by (deg_t, deg_x, deg_y) and x/y exponents may be negative."""

    terms: dict


@dataclass(frozen=True)
class ChartPullback:
    """One chart coordinate factored as x^x_exp * y^y_exp * q."""

    i: int
    x_exp: int
    y_exp: int
    q: LaurentPoly


def _gcd2(a: int, b: int) -> int:
    return gcd(abs(a), abs(b))


def build_fan(k) -> Fan:
    """Construct and validate the fan of a zero sequence.

    The rays are generated by the three-term recursion and then every
    defining property is checked: the closing relations, the closed-form
    continuant coordinates, primitivity, pairwise distinctness and
    cyclic unimodularity.  Any failure means k does not represent 0
    admissibly, and raises ValueError.
    """
    k = tuple(int(x) for x in k)
    if not k:
        raise ValueError("a fan needs a nonempty sequence")
    r = len(k)
    u = [(-1, -1), (1, 0)]
    for j in range(1, r):
        c = k[j - 1] - 1 if j == 1 else k[j - 1]
        vx, vy = u[j]
        px, py = u[j - 1]
        u.append((c * vx - px, c * vy - py))
    u.append((0, 1))
    # closing relations
    if r == 1:
        ok = (u[0][0] + u[2][0], u[0][1] + u[2][1]) == ((k[0] - 1) * u[1][0], (k[0] - 1) * u[1][1])
    else:
        ok = (u[r - 1][0] + u[r + 1][0], u[r - 1][1] + u[r + 1][1]) == (
            k[r - 1] * u[r][0],
            k[r - 1] * u[r][1],
        )
    if not ok:
        raise ValueError(f"{k} does not close up to a complete fan")
    for j in range(1, r + 1):
        # second coordinate is the continuant of k_2..k_{j-1}, empty only for j >= 2
        expected = (z_value(k[: j - 1]), z_value(k[1 : j - 1]) if j >= 2 else 0)
        if u[j] != expected:
            raise ValueError(f"ray u_{j} of {k} disagrees with its continuant coordinates")
    rays = u
    n = len(rays)
    if len(set(rays)) != n:
        raise ValueError(f"{k} produces repeated rays")
    for j in range(n):
        ax, ay = rays[j]
        bx, by = rays[(j + 1) % n]
        if _gcd2(ax, ay) != 1:
            raise ValueError(f"ray u_{j} of {k} is not primitive")
        if ax * by - ay * bx != 1:
            raise ValueError(f"adjacent rays u_{j}, u_{(j + 1) % n} of {k} are not unimodular")
    return Fan(tuple(rays))


def chart_exponents(a, k) -> ChartExponentTable:
    """The full table of chart exponents for (a, k)."""
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    r = len(a)
    if len(k) != r:
        raise ValueError("a and k must have the same length")
    grid = []
    for i in range(1, r + 2):
        row = []
        for j in range(1, r + 2):
            if i == j:
                row.append(0)  # the order-(-1) continuant, not the empty one
            elif i < j:
                row.append(z_value(k[i : j - 1]))
            else:
                row.append(-z_value(a[j : i - 1]))
        grid.append(tuple(row))
    return ChartExponentTable(tuple(grid))


def _interior(a: tuple[int, ...], i: int) -> int:
    return 0 if i == 1 else z_value(a[1 : i - 1])


def pullback_chain(a, k, j: int, chain=None, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Pull the chain coordinates z_1..z_{r+1} back to the j-th chart.

    Substitutes the monomial chart map

        z0 = x^Z(k_1..k_{j-1}) * y^Z(k_1..k_j)
        z1 = x^Z(k_2..k_{j-1}) * y^Z(k_2..k_j)

    into z_i = z0^(-E_i) * P_i and factors each result as
    x^m_i^(j) * y^m_i^(j+1) * Q_i with Q_i a polynomial divisible by
    neither x nor y.  The extracted exponents are checked against the
    chart-exponent table; a mismatch raises VerificationError.
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    r = len(a)
    if not 1 <= j <= r:
        raise ValueError(f"chart index must be in 1..{r}, got {j}")
    if chain is None:
        chain = deformation_chain(a, k, degree_cap=degree_cap)
    table = chart_exponents(a, k)
    sub_a = z_value(k[: j - 1])
    sub_b = z_value(k[:j])
    sub_c = z_value(k[1 : j - 1]) if j >= 2 else 0
    sub_d = z_value(k[1:j])
    out = []
    for i in range(1, r + 2):
        e_i = _interior(a, i)
        terms: dict[tuple[int, int, int], int] = {}
        for (dt, d0, d1), c in chain[i].terms.items():
            dx = sub_a * d0 + sub_c * d1 - sub_a * e_i
            dy = sub_b * d0 + sub_d * d1 - sub_b * e_i
            key = (dt, dx, dy)
            v = terms.get(key, 0) + c
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        mx = min(dx for (_, dx, _) in terms)
        my = min(dy for (_, _, dy) in terms)
        if mx != table.value(i, j) or my != table.value(i, j + 1):
            raise VerificationError(
                f"chart exponents of z_{i} in chart {j} are ({mx},{my}), "
                f"expected ({table.value(i, j)},{table.value(i, j + 1)})"
            )
        q = {(dt, dx - mx, dy - my): c for (dt, dx, dy), c in terms.items()}
        out.append(ChartPullback(i, mx, my, LaurentPoly(q)))
    return tuple(out)


def _x_restriction(q: LaurentPoly) -> dict[tuple[int, int], int]:
    """Terms of q with x-exponent zero, keyed by (deg_t, deg_y)."""
    return {(dt, dy): c for (dt, dx, dy), c in q.terms.items() if dx == 0}


def _binomial_ratio(rest: dict, d: int, e: int):
    """Check rest = c1'(t) * (c2*y^d + c3*t)^e and return c3/c2, or None.

    Verified over the rationals: the top y-block determines c1'(t)*c2^e,
    the next one the ratio, and the whole expansion is then reproduced
    exactly.
    """
    blocks: dict[int, dict[int, QQ]] = {}
    for (dt, dy), c in rest.items():
        blocks.setdefault(dy, {})[dt] = QQ(c)
    if set(blocks) != {d * (e - l) for l in range(e + 1)}:
        return None
    top = blocks[d * e]

    def scaled(poly: dict[int, QQ], factor: QQ, tshift: int) -> dict[int, QQ]:
        return {dt + tshift: c * factor for dt, c in poly.items()}

    if e == 0:
        return QQ(0)
    down = blocks[d * (e - 1)]
    # down must equal e * rho * t * top for a constant rho
    dt0 = min(down)
    c0 = down[dt0]
    if dt0 - 1 not in top or top[dt0 - 1] == 0:
        return None
    rho = c0 / (QQ(e) * top[dt0 - 1])
    if rho == 0:
        return None
    for l in range(1, e + 1):
        want = scaled(top, QQ(comb(e, l)) * rho**l, l)
        have = blocks[d * (e - l)]
        if {dt: c for dt, c in want.items() if c} != have:
            return None
    return rho


def verify_chart_restrictions(a, k, j: int, chain=None, check_taylor: bool = True):
    """Instance checks of the chart factorization structure.

    For i <= j the restriction of Q_i to x = 0 must be a nonzero element
    of Z[t]; for i > j it must be c1'(t) times the Z(a_{j+1}..a_{i-1})
    power of a binomial c2 * y^(a_j-k_j) + c3 * t with the ratio c3/c2
    independent of i.  When a_j - k_j = 1 the vanishing order of Q_i at
    the unique root is additionally checked to equal the same continuant
    (larger gaps would need a root extension and are skipped with a log
    notice).  Returns True when all performed checks pass.
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    pulls = pullback_chain(a, k, j, chain=chain)
    d = a[j - 1] - k[j - 1]
    r = len(a)
    ratios = []
    for pull in pulls:
        i = pull.i
        rest = _x_restriction(pull.q)
        if not rest:
            return False
        if i <= j or d == 0:
            if any(dy != 0 for (_, dy) in rest):
                return False
            continue
        e = z_value(a[j : i - 1])
        rho = _binomial_ratio(rest, d, e)
        if rho is None:
            return False
        ratios.append(rho)
    if ratios and any(r0 != ratios[0] for r0 in ratios):
        return False
    if check_taylor and d == 1 and ratios:
        rho = ratios[0]
        for pull in pulls:
            if pull.i <= j:
                continue
            e = z_value(a[j : pull.i - 1])
            if not _taylor_order_matches(pull.q, rho, e):
                return False
    elif check_taylor and d > 1:
        logger.info(
            "chart %d of (a=%s, k=%s): skipping vanishing-order check, "
            "the %d roots live in an extension",
            j,
            a,
            k,
            d,
        )
    return True


def _taylor_order_matches(q: LaurentPoly, rho: QQ, expected: int) -> bool:
    """Vanishing order of q at (x, y) = (0, -rho*t), in the local variables
    (x, y + rho*t), must equal ``expected`` with an x-free term of lowest
    order present."""
    local: dict[tuple[int, int, int], QQ] = {}
    for (dt, dx, dy), c in q.terms.items():
        # substitute y = u - rho*t and expand
        for s in range(dy + 1):
            key = (dt + dy - s, dx, s)
            coeff = QQ(c) * comb(dy, s) * (-rho) ** (dy - s)
            v = local.get(key, QQ(0)) + coeff
            if v:
                local[key] = v
            else:
                local.pop(key, None)
    order = min(dx + du for (_, dx, du) in local)
    if order != expected:
        return False
    return any(dx == 0 for (_, dx, du) in local if dx + du == order)


def indeterminacy_count(a, k, j: int, chain=None) -> int:
    """Number of points of the chart where the chain map is undefined.

    Equals a_j - k_j; cross-checked against the y-degree of the restricted
    binomial read off the first affected pullback and against the
    all-ones block widths of the incidence data.
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    r = len(a)
    if not 1 <= j <= r:
        raise ValueError(f"chart index must be in 1..{r}, got {j}")
    d = a[j - 1] - k[j - 1]
    pulls = pullback_chain(a, k, j, chain=chain)
    rest = _x_restriction(pulls[j].q)  # pullback of z_{j+1}
    ydeg = max(dy for (_, dy) in rest)
    if ydeg != d:
        raise VerificationError(
            f"restricted binomial degree {ydeg} in chart {j} disagrees with a_j - k_j = {d}"
        )
    return d
