import random

import pytest

from markovshift import (
    FgAbelianGroup,
    NonNegMatrix,
    PreconditionError,
    ZeroOneMatrix,
    bowen_franks,
    decide_coe,
    decide_flow,
    determinant,
    full_group_abelianization,
    identity_minus,
    invariant_triple,
    k_groups,
    kernel_basis,
)
from markovshift.realization import base_matrix

from _support import random_nonneg, random_zero_one

FULL2 = ZeroOneMatrix.from_rows([[1, 1], [1, 1]])
GOLDEN = ZeroOneMatrix.from_rows([[1, 1], [1, 0]])
FULL3 = ZeroOneMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, 1]])


class TestBowenFranks:
    def test_full_two_shift_trivial(self):
        pg = bowen_franks(FULL2)
        assert pg.group.is_trivial
        assert pg.point == pg.group.zero()

    def test_full_three_shift(self):
        pg = bowen_franks(FULL3)
        assert pg.group == FgAbelianGroup(0, (2,))
        assert pg.point == pg.group.element(torsion=(1,))

    def test_golden_mean_trivial(self):
        assert bowen_franks(GOLDEN).group.is_trivial

    def test_transpose_flag_gives_same_group(self):
        rng = random.Random(3)
        for _ in range(10):
            m = random_zero_one(rng, rng.randint(2, 4))
            assert bowen_franks(m, True).group == bowen_franks(m, False).group


class TestInvariantTriple:
    def test_full_two_shift(self):
        inv = invariant_triple(FULL2)
        assert inv.group.is_trivial
        assert (inv.det_value, inv.sign, inv.k1_rank) == (-1, -1, 0)

    def test_golden_mean(self):
        inv = invariant_triple(GOLDEN)
        assert inv.group.is_trivial
        assert (inv.det_value, inv.sign, inv.k1_rank) == (-1, -1, 0)

    def test_full_three_shift(self):
        inv = invariant_triple(FULL3)
        assert inv.group == FgAbelianGroup(0, (2,))
        assert inv.point == inv.group.element(torsion=(1,))
        assert (inv.det_value, inv.sign, inv.k1_rank) == (-2, -1, 0)

    def test_rejects_reducible(self):
        with pytest.raises(PreconditionError):
            invariant_triple(NonNegMatrix.from_rows([[1, 1], [0, 1]]))

    def test_rejects_permutation(self):
        with pytest.raises(PreconditionError):
            invariant_triple(ZeroOneMatrix.from_rows([[0, 1], [1, 0]]))

    def test_internal_consistency_on_random_matrices(self):
        rng = random.Random(61)
        for _ in range(25):
            m = random_zero_one(rng, rng.randint(2, 5))
            inv = invariant_triple(m)
            order = inv.group.order()
            if order is None:
                assert inv.det_value == 0 and inv.sign == 0 and inv.k1_rank >= 1
            else:
                assert abs(inv.det_value) == order
                assert inv.k1_rank == 0
            assert inv.k1_rank == len(kernel_basis(identity_minus(m, transpose=True)))

    def test_invariant_under_state_permutation(self):
        rng = random.Random(62)
        for _ in range(10):
            n = rng.randint(2, 4)
            m = random_zero_one(rng, n)
            perm = list(range(n))
            rng.shuffle(perm)
            permuted = ZeroOneMatrix.from_rows(
                [[m.entries[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
            )
            assert decide_coe(m, permuted).equivalent
            a, b = invariant_triple(m), invariant_triple(permuted)
            assert a.group == b.group and a.det_value == b.det_value


class TestDecisions:
    def test_full_two_vs_golden_mean(self):
        outcome = decide_coe(FULL2, GOLDEN)
        assert outcome.equivalent
        assert outcome.left.det_value == outcome.right.det_value == -1

    def test_reflexivity(self):
        for m in (FULL2, GOLDEN, FULL3):
            assert decide_coe(m, m).equivalent
            assert decide_flow(m, m).equivalent

    def test_full_two_vs_full_three(self):
        outcome = decide_coe(FULL2, FULL3)
        assert not outcome.equivalent
        assert "not isomorphic" in outcome.reason
        assert not decide_flow(FULL2, FULL3).equivalent

    def test_flow_spec_pair(self):
        assert decide_flow(FULL2, GOLDEN).equivalent

    def test_flow_transpose_always_equivalent(self):
        rng = random.Random(15)
        for _ in range(12):
            m = random_zero_one(rng, rng.randint(2, 4))
            mt = ZeroOneMatrix.from_rows(list(zip(*m.entries)))
            assert decide_flow(m, mt).equivalent

    def test_coe_implies_flow(self):
        rng = random.Random(16)
        matrices = [random_zero_one(rng, rng.randint(2, 4)) for _ in range(12)]
        matrices += [FULL2, GOLDEN, FULL3]
        invariants = [invariant_triple(m) for m in matrices]
        for a in invariants:
            for b in invariants:
                if decide_coe(a, b).equivalent:
                    assert decide_flow(a, b).equivalent

    def test_symmetry(self):
        rng = random.Random(18)
        matrices = [random_zero_one(rng, rng.randint(2, 4)) for _ in range(8)]
        invariants = [invariant_triple(m) for m in matrices]
        for a in invariants:
            for b in invariants:
                assert decide_coe(a, b).equivalent == decide_coe(b, a).equivalent
                assert decide_flow(a, b).equivalent == decide_flow(b, a).equivalent

    def test_certificate_contents(self):
        cert = decide_coe(FULL2, FULL3).certificate()
        assert cert["left"]["determinant"] == -1
        assert cert["right"]["group"] == "Z/2"
        assert cert["checks"]["groups_isomorphic"] is False


class TestKGroups:
    def test_full_three_shift(self):
        pg, rank = k_groups(FULL3)
        assert pg.group == FgAbelianGroup(0, (2,))
        assert pg.point == pg.group.element(torsion=(1,))
        assert rank == 0

    def test_full_two_shift(self):
        pg, rank = k_groups(FULL2)
        assert pg.group.is_trivial
        assert rank == 0

    def test_singular_matrix_has_kernel(self):
        m = base_matrix((0, 0))
        assert determinant(identity_minus(m)) == 0
        _, rank = k_groups(m)
        assert rank >= 1


class TestFullGroupAbelianization:
    def test_full_two_shift(self):
        assert full_group_abelianization(FULL2).is_trivial

    def test_full_three_shift(self):
        assert full_group_abelianization(FULL3) == FgAbelianGroup(0, (2,))

    def test_free_bowen_franks(self):
        m = base_matrix((0, 0))
        assert full_group_abelianization(m) == FgAbelianGroup(1, (2,))

    def test_odd_torsion_contributes_nothing(self):
        m = base_matrix((0, 3))
        assert full_group_abelianization(m).is_trivial


class TestNonNegInputs:
    def test_single_state_multi_edge(self):
        m = NonNegMatrix.from_rows([[2]])
        inv = invariant_triple(m)
        assert inv.group.is_trivial and inv.det_value == -1
        assert decide_coe(m, FULL2).equivalent

    def test_rejects_single_fixed_point(self):
        with pytest.raises(PreconditionError):
            invariant_triple(NonNegMatrix.from_rows([[1]]))

    def test_random_nonneg_triples_consistent(self):
        rng = random.Random(90)
        for _ in range(10):
            m = random_nonneg(rng, rng.randint(2, 4))
            inv = invariant_triple(m)
            assert inv.sign == (inv.det_value > 0) - (inv.det_value < 0)
