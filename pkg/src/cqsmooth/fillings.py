"""Lattice models of Milnor fibers and the filling classification.

The Milnor fiber attached to a pair (a, k) embeds in a closed 4-manifold
obtained from the 4-sphere by n = r - 1 + sum(a_i - k_i) blow-ups, so the
ambient second homology is the diagonal lattice with basis E_1..E_n, each
of square -1.  The distinguished classes c_1..c_r pair with the E_j exactly
by the block matrix D(a; k): the rows of D are their coordinates, the Gram
identity D * D^T = M(a) recovers the tridiagonal chain lattice, and the
only square minus-one classes are the 2n vectors +-E_j.  Counting, for
each i, those meeting c_i and no other c_j gives the fingerprint
(2*(a_i - k_i))_i, which recovers k and therefore distinguishes all the
fibers over a fixed oriented lens space (Lisca's classification).

The leftover twofold ambiguity (q, k) versus (q', k') is resolved by the
order of the lens space: a two-valued tag recording which end of the chain
plumbing graph is vertex one.  Conjugating a descriptor flips the tag,
inverts q mod p, and reverses k.
"""

from dataclasses import dataclass
from typing import Literal

from .contfrac import hj_expand, q_conjugate
from .errors import VerificationError
from .zeroseq import (
    IntegerMatrix,
    ZeroSequence,
    _as_k_tuple,
    _check_a_chain,
    block_matrix,
    continuant_matrix,
    enumerate_K,
)


@dataclass(frozen=True)
class PlumbingChain:
    """Linear plumbing graph: vertex self-intersections plus the marking
    that records which end is vertex one."""

    weights: tuple[int, ...]
    marking: Literal["forward", "reversed"] = "forward"

    def __post_init__(self):
        if not self.weights:
            raise ValueError("a plumbing chain needs at least one vertex")
        if self.marking not in ("forward", "reversed"):
            raise ValueError(f"bad marking {self.marking!r}")


@dataclass(frozen=True)
class DiagonalLatticeModel:
    """Classes c_1..c_r written in a diagonal basis E_1..E_n of squares -1.

    Row i of ``class_rows`` lists the pairings c_i . E_j, so the
    intersection of two classes is minus the dot product of their rows.
    """

    rank: int
    class_rows: IntegerMatrix

    def __post_init__(self):
        if self.class_rows.cols != self.rank:
            raise ValueError("rank does not match the coordinate matrix")


@dataclass(frozen=True)
class MilnorNumbers:
    euler_characteristic_fiber: int
    mu: int
    n_points: int


@dataclass(frozen=True)
class FillingDescriptor:
    """Parameters (p, q, k) of a filling plus the boundary-order tag."""

    p: int
    q: int
    k: tuple[int, ...]
    order_type: Literal["as_given", "conjugated"] = "as_given"

    def __post_init__(self):
        a = hj_expand(self.p, self.p - self.q)  # validates the pair
        k = _as_k_tuple(self.k)
        object.__setattr__(self, "k", k)
        if len(k) != len(a) or any(ki > ai for ki, ai in zip(k, a)):
            raise ValueError(f"k={k} is not bounded by the chain of {self.p}/{self.p - self.q}")
        if self.order_type not in ("as_given", "conjugated"):
            raise ValueError(f"bad order tag {self.order_type!r}")

    def conjugate(self) -> "FillingDescriptor":
        flipped = "conjugated" if self.order_type == "as_given" else "as_given"
        return FillingDescriptor(self.p, q_conjugate(self.p, self.q), self.k[::-1], flipped)

    def normalized(self) -> "FillingDescriptor":
        """Rewrite with the tag as_given (conjugating the data if needed)."""
        return self if self.order_type == "as_given" else self.conjugate()


def chain_graph(p: int, q: int, flavor: str = "b_chain") -> PlumbingChain:
    """Chain plumbing graph with weights -b_i (resolution) or -a_i."""
    if flavor == "b_chain":
        seq = hj_expand(p, q)
    elif flavor == "a_chain":
        seq = hj_expand(p, p - q)
    else:
        raise ValueError(f"flavor must be 'b_chain' or 'a_chain', got {flavor!r}")
    return PlumbingChain(tuple(-x for x in seq), "forward")


def diagonal_model(a, k) -> DiagonalLatticeModel:
    """The diagonal-lattice coordinates of the classes c_i for (a, k)."""
    mat = block_matrix(a, k)
    return DiagonalLatticeModel(mat.cols, mat)


def gram_from_blocks(a, k) -> IntegerMatrix:
    """D(a;k) * D(a;k)^T, checked to equal the tridiagonal matrix of a.

    In the diagonal lattice the pairing is minus the dot product, so this
    identity says the classes c_i span a chain lattice with self-pairings
    -a_i and consecutive pairings +1.
    """
    a = _check_a_chain(a)
    mat = block_matrix(a, k)
    gram = mat.mul(mat.transpose())
    if gram != continuant_matrix(a):
        raise VerificationError(f"Gram identity failed for a={a}, k={tuple(k)}")
    return gram


def lisca_fingerprint(model: DiagonalLatticeModel) -> tuple[int, ...]:
    """For each class index i, the number of square minus-one lattice
    classes pairing nonzero with c_i and zero with every other class.

    In a diagonal lattice the only square minus-one classes are the 2n
    vectors +-E_j, so the count is twice the number of columns supported
    on row i alone.
    """
    counts = [0] * model.class_rows.rows
    for col in model.class_rows.columns():
        support = [i for i, x in enumerate(col) if x]
        if len(support) == 1:
            counts[support[0]] += 2
    return tuple(counts)


def recover_k(a, fingerprint) -> ZeroSequence:
    """Invert the fingerprint: k_i = a_i - fingerprint_i / 2.

    Raises ValueError if the fingerprint is not even and in range or if
    the recovered sequence is not an admissible zero sequence bounded by
    a (the model then does not come from a filling of this chain).
    """
    a = _check_a_chain(a)
    fingerprint = tuple(int(x) for x in fingerprint)
    if len(fingerprint) != len(a):
        raise ValueError("fingerprint length does not match the chain")
    if any(f < 0 or f % 2 or f // 2 > ai for f, ai in zip(fingerprint, a)):
        raise ValueError(f"fingerprint {fingerprint} is not of the form 2*(a-k)")
    return ZeroSequence(tuple(ai - f // 2 for ai, f in zip(a, fingerprint)))


def classify(d1: FillingDescriptor, d2: FillingDescriptor, respect_order: bool = False) -> bool:
    """Whether two descriptors give the same filling.

    Ignoring the order, (q, k) and (q', k') describe the same oriented
    4-manifold and nothing else does.  Respecting the order, descriptors
    are equivalent only when identical after normalizing the tag.
    """
    if d1.p != d2.p:
        return False
    if respect_order:
        n1, n2 = d1.normalized(), d2.normalized()
        return (n1.q, n1.k) == (n2.q, n2.k)
    c1 = d1.conjugate()
    return (d2.q, d2.k) in {(d1.q, d1.k), (c1.q, c1.k)}


def milnor_numbers(a, k) -> MilnorNumbers:
    """Euler characteristic bookkeeping of the fiber of (a, k).

    The fiber is the complement of the chain of r+1 spheres in the n-fold
    blow-up of the plane, so chi = (3 + n) - (r + 2) = sum(a_i - k_i).
    The Milnor number mu = chi - 1 assumes the fiber has first Betti
    number zero, a derived convention validated against chi only.
    """
    a = _check_a_chain(a)
    k = _as_k_tuple(k)
    if len(k) != len(a) or any(ki > ai for ki, ai in zip(k, a)):
        raise ValueError(f"k={k} is not bounded by a={a}")
    total = sum(ai - ki for ai, ki in zip(a, k))
    n = len(a) - 1 + total
    return MilnorNumbers(euler_characteristic_fiber=total, mu=total - 1, n_points=n)


def count_components(p: int, q: int) -> int:
    """Number of smoothing components of the singularity of type (p, q)."""
    return len(enumerate_K(hj_expand(p, p - q)))
