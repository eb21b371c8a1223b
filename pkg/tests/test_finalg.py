from fractions import Fraction

import pytest

from mzlab.errors import CharacteristicTooSmall, NonSplit, ParseError, PreconditionFailed
from mzlab.rings import PrimeField, RationalField
from mzlab.services import finalg
from mzlab.services.finalg import LinOp, OpKind
from mzlab.services.subspace import span_vectors

Q = RationalField()
F2 = PrimeField(2)
F3 = PrimeField(3)

DUAL_NUMBERS_F2 = """
dim 2 field fp:2   # F2[x]/(x^2)
0 0 0 1
0 1 1 1
1 0 1 1
unit 1 0
"""

CATALOG = [
    finalg.truncated_polynomial(F2, 2),
    finalg.split_product(F2, 2),
    finalg.truncated_polynomial(F2, 3),
    finalg.truncated_polynomial(F3, 2),
    finalg.split_product(F2, 3),
]


def _swap(A):
    return LinOp.from_images(A, [A.basis(1), A.basis(0)], OpKind.ENDOMORPHISM)


def test_structure_constants_from_text():
    A = finalg.from_text(DUAL_NUMBERS_F2)
    B = finalg.truncated_polynomial(F2, 2)
    assert A.table == B.table
    assert A.unit == B.unit
    assert A.is_commutative()
    assert A.order == 4


def test_structure_constant_errors():
    with pytest.raises(ParseError):
        finalg.from_text("dimension 2 over q")
    with pytest.raises(ParseError):
        finalg.from_text("dim 2 field q\n0 0 5 1")
    # (e0 e0) e0 = e0 but e0 (e0 e0) = 0
    with pytest.raises(PreconditionFailed):
        finalg.from_text("dim 2 field q\n0 0 1 1\n1 0 0 1")


@pytest.mark.parametrize("A", CATALOG, ids=lambda A: A.describe())
def test_idempotent_criterion_matches_exhaustive_decision(A):
    local = finalg.is_local(A)
    for V in finalg.subspaces(A):
        decided = finalg.ms_decide_finite(A, V)
        assert finalg.ms_test_idempotent(A, V) == decided
        if local:
            assert finalg.ms_local_criterion(A, V) == decided


def test_subspace_enumeration_counts():
    assert len(finalg.subspaces(finalg.split_product(F2, 2))) == 5
    assert len(finalg.subspaces(finalg.truncated_polynomial(F3, 2))) == 6


def test_locality():
    assert finalg.is_local(finalg.truncated_polynomial(F3, 2))
    assert not finalg.is_local(finalg.split_product(F2, 2))
    with pytest.raises(PreconditionFailed):
        finalg.ms_local_criterion(finalg.split_product(F2, 2), span_vectors([], F2, 2))


def test_radical_and_nilradical():
    A = finalg.truncated_polynomial(F2, 2)
    zero = span_vectors([], F2, 2)
    assert finalg.radical_finite(A, zero) == [(0, 0), (0, 1)]
    assert finalg.nilradical_commutative(A).rows == ((0, 1),)
    assert finalg.nilradical_commutative(finalg.truncated_polynomial(Q, 3)).dim == 2
    B = finalg.split_product(Q, 3)
    V = span_vectors([[1, 0, 0], [0, 1, 1]], Q, 3)
    assert finalg.radical_member_split(B, V, (Fraction(2), Fraction(5), Fraction(5)))
    assert not finalg.radical_member_split(B, V, (Fraction(2), Fraction(5), Fraction(3)))


def test_power_cycle():
    # 2, 1, 2, ... in F3
    assert finalg.power_cycle(finalg.split_product(F3, 1), (2,)) == (0, 2)
    A = finalg.truncated_polynomial(F3, 2)
    assert finalg.power_cycle(A, (0, 1)) == (1, 1)
    # (1 + x)^3 = 1 in F3[x]/(x^2)
    assert finalg.power_cycle(A, (1, 1)) == (0, 3)
    assert finalg.power_cycle(A, (0, 0)) == (0, 1)


def test_trace_form_radical():
    R = finalg.trace_form_radical(finalg.truncated_polynomial(Q, 3))
    assert R.dim == 2
    assert R.contains_vector((0, 1, 0)) and R.contains_vector((0, 0, 1))
    assert not R.contains_vector((1, 0, 0))
    assert finalg.trace_form_radical(finalg.split_product(Q, 3)).dim == 0


def test_principal_ideals():
    A = finalg.truncated_polynomial(Q, 3)
    x = A.basis(1)
    assert finalg.principal_ideal(A, x).dim == 2
    assert finalg.principal_ideal(A, A.unit).dim == 3


def test_swap_decomposition():
    A = finalg.split_product(Q, 2)
    phi = _swap(A)
    dec = finalg.gen_eigendecomp(phi)
    assert sorted(dec.eigenvalues) == [-1, 1]
    assert all(block.dim == 1 for block in dec.blocks)
    assert finalg.grading_check(A, dec)
    assert finalg.image_decomp(phi.identity_minus(), dec, Q.one()).dim == 1
    complement = finalg.grading_complement(dec, Q.one())
    assert complement.dim == 1
    assert complement.rows != dec.block_for(Q.one()).rows
    assert finalg.linop_period(phi, 10) == (1, 3)


def test_non_split_operator():
    A = finalg.split_product(Q, 2)
    rotation = LinOp(A, ((Q.zero(), Q.from_int(-1)), (Q.one(), Q.zero())))
    with pytest.raises(NonSplit):
        finalg.gen_eigendecomp(rotation)


def test_endomorphism_and_derivation_laws_are_checked():
    A = finalg.split_product(Q, 2)
    with pytest.raises(PreconditionFailed):
        LinOp.from_images(A, [A.basis(0), A.basis(0)], OpKind.ENDOMORPHISM)
    B = finalg.truncated_polynomial(Q, 3)
    euler = LinOp.from_images(B, [B.zero(), B.basis(1), B.scale(Q.from_int(2), B.basis(2))], OpKind.DERIVATION)
    assert euler.kernel().dim == 1


def test_projection_kernel_chain_in_image():
    A = finalg.split_product(Q, 2)
    projection = LinOp.from_images(A, [A.basis(0), A.zero()], OpKind.ENDOMORPHISM)
    assert finalg.kernel_chain(projection).rows == ((0, 1),)
    assert finalg.kernel_chain_in_image(projection)


def test_idempotent_anomalies_depend_on_characteristic():
    A = finalg.split_product(F2, 2)
    assert finalg.idempotent_anomalies(A, _swap(A).identity_minus()) == [(1, 1)]
    B = finalg.split_product(F3, 2)
    assert finalg.idempotent_anomalies(B, _swap(B).identity_minus()) == []


def test_newton_identities(rng):
    assert finalg.power_sums([1, 2, 3], 3) == [6, 14, 36]
    assert finalg.newton_to_elementary([6, 14, 36]) == [6, 11, 6]
    assert finalg.elementary_symmetric([1, 2, 3]) == [6, 11, 6]
    for _ in range(50):
        values = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 6))]
        n = len(values)
        assert finalg.newton_to_elementary(finalg.power_sums(values, n)) == finalg.elementary_symmetric(values)
    assert not any(finalg.newton_to_elementary([0] * 6))
    with pytest.raises(CharacteristicTooSmall):
        finalg.newton_to_elementary([1, 1, 1], F3)


def test_grouped_vandermonde():
    report = finalg.grouped_vandermonde_check([1, 1, 2], [1, -1, 0], 3)
    assert report.holds
    assert report.coefficients_vanish
    assert report.nullity == 0
    assert not finalg.power_sum_system_check([1, 2], [1, 1], 2)
