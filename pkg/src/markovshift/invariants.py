"""The complete invariant of irreducible one-sided topological Markov shifts.

For a transition matrix A the invariant is the triple (F, u, s): the
Bowen-Franks group of the transpose, F = Z^N / (id - A^t) Z^N, its
distinguished element u (the class of the all-ones vector), and the sign s
of det(id - A).  Two irreducible shifts whose spaces have no isolated
points are continuously orbit equivalent exactly when their triples match
under a pointed isomorphism; dropping the point and using the plain group
decides flow equivalence of the two-sided shifts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, VerificationError
from .groups import (
    FgAbelianGroup,
    GroupElement,
    PointedGroup,
    from_presentation,
    is_isomorphic,
    pointed_is_isomorphic,
    tensor_z2,
)
from .intmat import determinant, kernel_basis, smith_normal_form
from .shifts import (
    NonNegMatrix,
    identity_minus,
    is_irreducible,
    is_permutation_matrix,
)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class MarkovInvariant:
    """Invariant triple (group, point, sign) plus its derived data."""

    group: FgAbelianGroup
    point: GroupElement
    det_value: int
    sign: int
    k1_rank: int

    def __post_init__(self):
        if self.sign != _sign(self.det_value):
            raise VerificationError("stored sign disagrees with the determinant")
        if (self.sign == 0) != (not self.group.is_finite):
            raise VerificationError("determinant vanishes exactly for infinite groups")
        if self.k1_rank != self.group.free_rank:
            raise VerificationError("kernel rank must equal the free rank of the group")
        order = self.group.order()
        if order is not None and order != abs(self.det_value):
            raise VerificationError("finite group order must equal |det(id - A)|")

    @property
    def pointed(self) -> PointedGroup:
        return PointedGroup(self.group, self.point)

    def summary(self) -> dict:
        return {
            "group": self.group.describe(),
            "free_rank": self.group.free_rank,
            "torsion_factors": list(self.group.torsion_factors),
            "point_free": list(self.point.free_coords),
            "point_torsion": list(self.point.torsion_coords),
            "determinant": self.det_value,
            "sign": self.sign,
            "k1_rank": self.k1_rank,
        }


def _require_classifiable(a: NonNegMatrix) -> None:
    if not is_irreducible(a):
        raise PreconditionError("matrix is reducible: the transition graph is not strongly connected")
    if is_permutation_matrix(a):
        raise PreconditionError(
            "matrix is a permutation matrix: the shift space is finite and has isolated points"
        )


def bowen_franks(a: NonNegMatrix, use_transpose: bool = True) -> PointedGroup:
    """Bowen-Franks group Z^N / (id - M) Z^N pointed at the all-ones class.

    With ``use_transpose`` the relation matrix is id - A^t, the convention
    under which the distinguished point is meaningful; the plain group is
    abstractly the same either way.
    """
    pres = from_presentation(identity_minus(a, transpose=use_transpose))
    point = pres.element_from_vector((1,) * a.size)
    return PointedGroup(pres.group, point)


def invariant_triple(a: NonNegMatrix) -> MarkovInvariant:
    """Assemble the full invariant of an irreducible, non-permutation matrix."""
    _require_classifiable(a)
    pointed = bowen_franks(a, use_transpose=True)
    det = determinant(identity_minus(a))
    snf = smith_normal_form(identity_minus(a, transpose=True))
    k1_rank = a.size - snf.rank
    return MarkovInvariant(
        group=pointed.group,
        point=pointed.point,
        det_value=det,
        sign=_sign(det),
        k1_rank=k1_rank,
    )


def k_groups(a: NonNegMatrix) -> tuple[PointedGroup, int]:
    """K-theory data: K0 as the pointed Bowen-Franks group, K1 as a free rank."""
    pointed = bowen_franks(a, use_transpose=True)
    rank = len(kernel_basis(identity_minus(a, transpose=True)))
    return pointed, rank


def full_group_abelianization(a: NonNegMatrix) -> FgAbelianGroup:
    """Abelianized topological full group: (BF(A^t) tensor Z/2) + Z^k1."""
    pointed = bowen_franks(a, use_transpose=True)
    halved = tensor_z2(pointed.group)
    k1_rank = pointed.group.free_rank
    return FgAbelianGroup(k1_rank, halved.torsion_factors)


@dataclass(frozen=True)
class EquivalenceDecision:
    """Outcome of an equivalence test with a machine-checkable certificate."""

    equivalent: bool
    reason: str
    left: MarkovInvariant
    right: MarkovInvariant
    checks: tuple[tuple[str, bool], ...]

    def __bool__(self) -> bool:
        return self.equivalent

    def certificate(self) -> dict:
        return {
            "left": self.left.summary(),
            "right": self.right.summary(),
            "checks": {name: ok for name, ok in self.checks},
        }


def _as_invariant(a) -> MarkovInvariant:
    if isinstance(a, MarkovInvariant):
        return a
    return invariant_triple(a)


def decide_coe(a, b, torsion_bound: int = 512) -> EquivalenceDecision:
    """Decide continuous orbit equivalence of two one-sided shifts.

    True exactly when the pointed Bowen-Franks groups of the transposes
    are isomorphic and the determinants of id - A agree.  Accepts matrices
    or precomputed invariants.
    """
    left = _as_invariant(a)
    right = _as_invariant(b)
    groups_ok = is_isomorphic(left.group, right.group)
    dets_ok = left.det_value == right.det_value
    if not groups_ok:
        reason = "Bowen-Franks groups are not isomorphic"
        pointed_ok = False
    elif not dets_ok:
        reason = "determinants of id - A differ"
        pointed_ok = False
    else:
        pointed_ok = pointed_is_isomorphic(left.pointed, right.pointed, torsion_bound=torsion_bound)
        reason = (
            "pointed Bowen-Franks groups isomorphic and determinants equal"
            if pointed_ok
            else "no group isomorphism carries one distinguished element to the other"
        )
    return EquivalenceDecision(
        equivalent=groups_ok and dets_ok and pointed_ok,
        reason=reason,
        left=left,
        right=right,
        checks=(
            ("groups_isomorphic", groups_ok),
            ("determinants_equal", dets_ok),
            ("pointed_isomorphic", pointed_ok),
        ),
    )


def decide_flow(a, b) -> EquivalenceDecision:
    """Decide flow equivalence of the corresponding two-sided shifts.

    True exactly when the Bowen-Franks groups are isomorphic as plain
    groups and the determinants agree; the distinguished element plays no
    role here.
    """
    left = _as_invariant(a)
    right = _as_invariant(b)
    groups_ok = is_isomorphic(left.group, right.group)
    dets_ok = left.det_value == right.det_value
    if not groups_ok:
        reason = "Bowen-Franks groups are not isomorphic"
    elif not dets_ok:
        reason = "determinants of id - A differ"
    else:
        reason = "Bowen-Franks groups isomorphic and determinants equal"
    return EquivalenceDecision(
        equivalent=groups_ok and dets_ok,
        reason=reason,
        left=left,
        right=right,
        checks=(
            ("groups_isomorphic", groups_ok),
            ("determinants_equal", dets_ok),
        ),
    )
