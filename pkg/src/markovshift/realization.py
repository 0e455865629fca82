"""Realize any admissible invariant triple as an explicit 0/1 matrix.

The pipeline: pick diagonal parameters whose base matrix presents the
requested group with the requested determinant sign, represent the
requested distinguished element by a nonnegative integer vector, graft
tails of that length onto the states to move the all-ones class onto the
element, and finally recode the nonnegative matrix as a 0/1 edge shift.
Every stage recomputes and checks the data it claims to preserve, so a
returned matrix is already verified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionError, ShapeError, VerificationError
from .groups import (
    FgAbelianGroup,
    GroupElement,
    PointedGroup,
    canonical_group,
    from_presentation,
    pointed_is_isomorphic,
)
from .intmat import determinant
from .invariants import MarkovInvariant, invariant_triple
from .shifts import NonNegMatrix, ZeroOneMatrix, edge_shift, identity_minus, validate


@dataclass(frozen=True)
class RealizationPlan:
    """Audit trail of a realization: parameters and every intermediate matrix."""

    d_list: tuple[int, ...]
    c_vector: tuple[int, ...]
    base: NonNegMatrix
    extended: NonNegMatrix
    final: ZeroOneMatrix
    invariant: MarkovInvariant


def choose_shape(group: FgAbelianGroup, sign: int) -> tuple[int, ...]:
    """Diagonal parameters realizing the group with the requested sign.

    One leading zero is always present; each further zero contributes a
    free generator, each prime-power part of the torsion contributes a
    cyclic factor, and trailing ones only flip the determinant's sign by
    adjusting the matrix size parity.
    """
    if sign not in (-1, 0, 1):
        raise PreconditionError("sign must be -1, 0 or 1")
    if (sign == 0) != (not group.is_finite):
        if group.is_finite:
            raise PreconditionError("a finite group needs sign -1 or 1")
        raise PreconditionError("an infinite group forces determinant 0, so sign must be 0")
    parts: list[int] = []
    for m in group.torsion_factors:
        remaining = m
        q = 2
        while remaining > 1:
            if remaining % q == 0:
                power = 1
                while remaining % q == 0:
                    power *= q
                    remaining //= q
                parts.append(power)
            q += 1
    d = [0] * (1 + group.free_rank) + sorted(parts)
    if group.is_finite:
        if len(d) < 2:
            d.append(1)
        if (-1) ** len(d) != sign:
            d.append(1)
    return tuple(d)


def base_matrix(d_list) -> NonNegMatrix:
    """Matrix with diagonal d_i + 2 and ones elsewhere, d_1 = 0.

    Presents Z^(zeros - 1) plus the cyclic factors Z/d_i (d_i >= 2), and
    det(id - A) = (-1)^N * product of d_2..d_N; both facts are recomputed
    before returning.
    """
    d = tuple(int(x) for x in d_list)
    if len(d) < 2:
        raise PreconditionError("base matrix needs at least 2 diagonal parameters")
    if d[0] != 0:
        raise PreconditionError("the first diagonal parameter must be 0")
    if any(x < 0 for x in d):
        raise PreconditionError("diagonal parameters must be nonnegative")
    n = len(d)
    rows = tuple(
        tuple(d[i] + 2 if i == j else 1 for j in range(n)) for i in range(n)
    )
    a = NonNegMatrix(rows)
    expected_det = (-1) ** n * math.prod(d[1:])
    if determinant(identity_minus(a)) != expected_det:
        raise VerificationError("base matrix determinant does not match its parameters")
    expected_group = canonical_group(d.count(0) - 1, [x for x in d if x >= 2])
    presented = from_presentation(identity_minus(a, transpose=True)).group
    if presented != expected_group:
        raise VerificationError("base matrix presents the wrong group")
    return a


def _base_diagonal_parameters(a: NonNegMatrix) -> tuple[int, ...]:
    n = a.size
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            x = a.entry(i, j)
            if i != j and x != 1:
                raise PreconditionError("matrix is not a base matrix: off-diagonal entries must be 1")
            if i == j and x < 2:
                raise PreconditionError("matrix is not a base matrix: diagonal entries must be >= 2")
    d = tuple(a.entry(i, i) - 2 for i in range(1, n + 1))
    if d[0] != 0:
        raise PreconditionError("matrix is not a base matrix: first diagonal parameter must be 0")
    return d


def point_vector(base: NonNegMatrix, u: GroupElement) -> tuple[int, ...]:
    """Nonnegative integer vector whose class in BF(base^t) is exactly u.

    Valid because for base matrices the all-ones class vanishes (checked)
    and d_i times the i-th unit vector lies in the relation lattice, so a
    representative can be reduced coordinatewise and then shifted by a
    multiple of the all-ones vector without changing its class.
    """
    d = _base_diagonal_parameters(base)
    pres = from_presentation(identity_minus(base, transpose=True))
    if not pres.group.contains(pres.group.element(u.free_coords, u.torsion_coords)):
        raise ShapeError("element does not live in the group presented by the base matrix")
    ones = (1,) * base.size
    if pres.element_from_vector(ones) != pres.group.zero():
        raise VerificationError("all-ones class of the base matrix is not zero")
    v = list(pres.representative(u))
    for i, di in enumerate(d):
        if di >= 1:
            v[i] %= di
    shift = max(0, -min(v))
    c = [x + shift for x in v]
    for i, di in enumerate(d):
        if di >= 1:
            c[i] %= di
    result = tuple(c)
    if pres.element_from_vector(result) != pres.group.element(u.free_coords, u.torsion_coords):
        raise VerificationError("point vector does not represent the requested element")
    return result


def tail_extension(a: NonNegMatrix, c, torsion_bound: int = 512) -> NonNegMatrix:
    """Graft a tail of length c_i onto state i, preserving the invariant.

    State (i, j) with j < c_i steps deterministically to (i, j + 1); state
    (i, c_i) behaves like original state i feeding the tail heads.  This
    moves the all-ones class onto the class of c while keeping the
    determinant; both facts are recomputed before returning.
    """
    c = tuple(int(x) for x in c)
    if len(c) != a.size:
        raise ShapeError("tail length vector must have one entry per state")
    if any(x < 0 for x in c):
        raise PreconditionError("tail lengths must be nonnegative")
    states = [(i, j) for i in range(1, a.size + 1) for j in range(c[i - 1] + 1)]
    index = {s: k for k, s in enumerate(states)}
    size = len(states)
    assert size == a.size + sum(c)
    rows = [[0] * size for _ in range(size)]
    for (i, j), k in index.items():
        if j == c[i - 1]:
            for t in range(1, a.size + 1):
                rows[k][index[(t, 0)]] = a.entry(i, t)
        else:
            rows[k][index[(i, j + 1)]] = 1
    b = NonNegMatrix.from_rows(rows)
    if determinant(identity_minus(a)) != determinant(identity_minus(b)):
        raise VerificationError("tail extension changed the determinant")
    pres_a = from_presentation(identity_minus(a, transpose=True))
    pres_b = from_presentation(identity_minus(b, transpose=True))
    target = PointedGroup(pres_a.group, pres_a.element_from_vector(c))
    grafted = PointedGroup(pres_b.group, pres_b.element_from_vector((1,) * size))
    if not pointed_is_isomorphic(target, grafted, torsion_bound=torsion_bound):
        raise VerificationError("tail extension did not move the all-ones class onto the target")
    return b


def realize(
    group: FgAbelianGroup,
    point: GroupElement,
    sign: int,
    torsion_bound: int = 512,
    allow_binary_passthrough: bool = False,
) -> tuple[ZeroOneMatrix, RealizationPlan]:
    """Construct an irreducible 0/1 matrix whose invariant triple is given.

    The triple must be admissible: sign 0 exactly for infinite groups.
    The returned matrix has been verified by recomputing its invariant and
    matching it against the request.
    """
    point = group.element(point.free_coords, point.torsion_coords)
    d = choose_shape(group, sign)
    base = base_matrix(d)
    c = point_vector(base, point)
    extended = tail_extension(base, c, torsion_bound=torsion_bound)
    if allow_binary_passthrough and extended.is_zero_one and extended.size >= 2:
        final = ZeroOneMatrix(extended.entries)
    else:
        final = edge_shift(extended)
    diagnostics = validate(final)
    if not diagnostics.classifiable:
        raise VerificationError(
            "realized matrix failed validation: " + "; ".join(i.message for i in diagnostics.issues)
        )
    inv = invariant_triple(final)
    if inv.group != group or inv.sign != sign:
        raise VerificationError("realized matrix has the wrong group or sign")
    if not pointed_is_isomorphic(inv.pointed, PointedGroup(group, point), torsion_bound=torsion_bound):
        raise VerificationError("realized matrix does not carry the requested distinguished element")
    plan = RealizationPlan(
        d_list=d, c_vector=c, base=base, extended=extended, final=final, invariant=inv
    )
    return final, plan
