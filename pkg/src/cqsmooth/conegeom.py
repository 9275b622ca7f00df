"""Rank-2 lattice geometry of oriented cones and their supplements.

Everything lives in a fixed coordinate model of the lattice N = Z^2: the
first edge generator is e1 = (1, 0), the second lattice point of the
boundary polyline is v1 = (0, 1), and then e2 = -q*e1 + p*v1 = (-q, p).
The boundary polyline of the cone spanned by (e1, e2) reads off the HJ
expansion of p/q through the relations v_{i-1} + v_{i+1} = b_i * v_i, while
the supplementary cone spanned by (-e1, e2) reads off the expansion of
p/(p-q).  The two polylines are linked edge by edge: consecutive
differences of the supplementary polyline run through the vertices of the
original one in blocks whose lengths are the integral edge lengths of the
supplement.
"""

from dataclasses import dataclass
from math import gcd

from .contfrac import edge_data, hj_expand

LatticeVector = tuple[int, int]


@dataclass(frozen=True)
class ConePolyline:
    """Ordered lattice points on the compact hull boundary of a cone.

    ``b`` is the associated sequence of the cone (the b-chain for the
    original cone, the a-chain for its supplement); it satisfies
    points[i-1] + points[i+1] = b[i-1] * points[i].
    """

    points: tuple[LatticeVector, ...]
    b: tuple[int, ...]


def _det(u: LatticeVector, v: LatticeVector) -> int:
    return u[0] * v[1] - u[1] * v[0]


def sigma_polyline(p: int, q: int) -> ConePolyline:
    """Boundary polyline of the cone of type p/q, from (1,0) to (-q,p)."""
    b = hj_expand(p, q)
    pts = [(1, 0), (0, 1)]
    for bi in b:
        vx, vy = pts[-1]
        ux, uy = pts[-2]
        pts.append((bi * vx - ux, bi * vy - uy))
    if pts[-1] != (-q, p):
        raise RuntimeError(f"polyline for ({p},{q}) missed its endpoint")
    return ConePolyline(tuple(pts), b)


def supplementary_polyline(p: int, q: int) -> ConePolyline:
    """Boundary polyline of the supplementary cone, from (-1,0) to (-q,p).

    Built by the block-difference rule: the l-th block of m_l consecutive
    differences all equal the sigma-polyline vertex w_l indexed by the
    partial sums of (n_j - 2).  The result is re-validated against the
    three-term relation with the a-chain coefficients.
    """
    a = hj_expand(p, p - q)
    sig = sigma_polyline(p, q)
    ed = edge_data(a)
    pts = [(-1, 0)]
    widx = 1
    for l, ml in enumerate(ed.m):
        w = sig.points[widx]
        for _ in range(ml):
            x, y = pts[-1]
            pts.append((x + w[0], y + w[1]))
        if l < ed.t_count:
            widx += ed.n[l] - 2
    if pts[-1] != (-q, p):
        raise RuntimeError(f"supplementary polyline for ({p},{q}) missed its endpoint")
    for i in range(1, len(pts) - 1):
        ai = a[i - 1]
        if (pts[i - 1][0] + pts[i + 1][0], pts[i - 1][1] + pts[i + 1][1]) != (
            ai * pts[i][0],
            ai * pts[i][1],
        ):
            raise RuntimeError(f"supplementary polyline for ({p},{q}) violates its recursion")
    return ConePolyline(tuple(pts), a)


def verify_precdual(p: int, q: int) -> bool:
    """Check the duality between the two boundary polylines.

    The supplementary polyline is rebuilt here from its own three-term
    recursion (independently of the block rule) and its consecutive
    differences are compared against the sigma-polyline vertices w_l in
    blocks of lengths m_1, ..., m_{t+1}.
    """
    a = hj_expand(p, p - q)
    sig = sigma_polyline(p, q)
    ed = edge_data(a)
    pts = [(-1, 0), (-1, 1)]
    for ai in a:
        vx, vy = pts[-1]
        ux, uy = pts[-2]
        pts.append((ai * vx - ux, ai * vy - uy))
    if pts[-1] != (-q, p):
        return False
    diffs = [
        (pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]) for i in range(len(pts) - 1)
    ]
    pos = 0
    widx = 1
    for l, ml in enumerate(ed.m):
        w = sig.points[widx]
        if any(diffs[i] != w for i in range(pos, pos + ml)):
            return False
        pos += ml
        if l < ed.t_count:
            widx += ed.n[l] - 2
    return pos == len(diffs)


def hull_polyline_oracle(p: int, q: int, which: str = "sigma", oracle_limit: int = 10_000) -> ConePolyline:
    """Definitional test oracle: the polyline straight from the convex hull.

    Scans the bounding strip 0 <= y <= p of the box |x|, |y| <= p row by
    row.  Within a row the cone's lattice points form a half-line in a
    recession direction of the hull, so only the extreme point of each row
    can lie on the compact boundary chain; those candidates are fed to an
    exact integer monotone-chain pass that keeps collinear points (all
    lattice points on the chain, not just its corners).  Independent of the
    continued-fraction machinery except for labelling the result.
    """
    if gcd(p, q) != 1 or not p > q > 0:
        raise ValueError(f"need coprime p > q > 0, got ({p},{q})")
    if p > oracle_limit:
        raise ValueError(f"p={p} exceeds the oracle limit {oracle_limit}")
    if which == "sigma":
        # cone points: y >= 0 and p*x + q*y >= 0; recession along (1, 0)
        cand = [(1, 0)] + [(-((q * y) // p), y) for y in range(1, p + 1)]
        sign = 1
    elif which == "supplementary":
        # cone points: y >= 0 and x <= -q*y/p; recession along (-1, 0)
        cand = [(-1, 0)] + [(-((q * y + p - 1) // p), y) for y in range(1, p + 1)]
        sign = -1
    else:
        raise ValueError(f"which must be 'sigma' or 'supplementary', got {which!r}")
    chain: list[LatticeVector] = []
    for pt in cand:
        while len(chain) >= 2:
            ox, oy = chain[-2]
            ax, ay = chain[-1]
            turn = (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox)
            if sign * turn > 0:
                chain.pop()
            else:
                break
        chain.append(pt)
    return ConePolyline(tuple(chain), _associated_sequence(chain))


def _associated_sequence(points) -> tuple[int, ...]:
    """Read the coefficients b_i off a polyline via v_{i-1}+v_{i+1} = b_i v_i."""
    out = []
    for i in range(1, len(points) - 1):
        sx = points[i - 1][0] + points[i + 1][0]
        sy = points[i - 1][1] + points[i + 1][1]
        vx, vy = points[i]
        bi = sx // vx if vx != 0 else sy // vy
        if (bi * vx, bi * vy) != (sx, sy):
            raise ValueError("points do not satisfy a three-term relation")
        out.append(bi)
    return tuple(out)


def alpha_classes(p: int, q: int) -> tuple[int, ...]:
    """Images of the polyline vertices v_1..v_s in Z/p, sign-canonicalised.

    The quotient map kills e1 = (1,0) and e2 = (-q,p), so a vertex (x, y)
    maps to y mod p.  The classes are only defined up to one global sign;
    the representative whose first nonzero entry lies in [1, p/2] is
    returned (equivalently, the option with the smaller first entry).
    Downstream comparisons must stay sign-insensitive.
    """
    sig = sigma_polyline(p, q)
    alphas = tuple(v[1] % p for v in sig.points[1:-1])
    flipped = tuple((-x) % p for x in alphas)
    for x, y in zip(alphas, flipped):
        if x != y:
            return alphas if x < y else flipped
    return alphas


def supplementary_classes(p: int, q: int) -> tuple[int, ...]:
    """Classes of the interior supplementary vertices in Z/p, plus the
    endpoint class of e2 which is always 0."""
    sup = supplementary_polyline(p, q)
    return tuple(v[1] % p for v in sup.points[1:])
