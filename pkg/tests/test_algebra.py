import numpy as np
import pytest

from octowdol.algebra import (
    MUL_INDEX,
    MUL_SIGN,
    associator,
    basis,
    cayley_dickson_table,
    check_axis,
    embed_quaternion,
    left_fold_product,
    left_mul_matrix,
    tau4_identities,
    tau4_identities_check,
    oct_conj,
    oct_exp_axis,
    oct_inv,
    oct_join,
    oct_mul,
    oct_norm,
    oct_split,
    octonion,
    quat_conj,
    quat_mul,
    real,
    right_mul_matrix,
)

from octo_table import table


def test_table_matches_transcription():
    idx, sgn = table()
    assert np.array_equal(idx, MUL_INDEX)
    assert np.array_equal(sgn, MUL_SIGN)


def test_doubling_rebuilds_table():
    idx, sgn = cayley_dickson_table()
    assert np.array_equal(idx, MUL_INDEX)
    assert np.array_equal(sgn, MUL_SIGN)


def test_tables_read_only():
    with pytest.raises(ValueError):
        MUL_INDEX[1, 1] = 3


def test_basis_products():
    for i in range(8):
        for j in range(8):
            prod = oct_mul(basis(i), basis(j))
            expected = MUL_SIGN[i, j] * basis(MUL_INDEX[i, j])
            assert np.array_equal(prod, expected)


def test_units_square_to_minus_one_and_anticommute():
    for i in range(1, 8):
        assert np.array_equal(oct_mul(basis(i), basis(i)), -basis(0))
        for j in range(1, 8):
            if i != j:
                assert np.array_equal(oct_mul(basis(i), basis(j)), -oct_mul(basis(j), basis(i)))


def test_norm_composition_random():
    rng = np.random.default_rng(1)
    a, b = rng.standard_normal((2, 2000, 8))
    lhs = oct_norm(oct_mul(a, b))
    assert np.allclose(lhs, oct_norm(a) * oct_norm(b), rtol=1e-13, atol=0)


def test_not_associative():
    # (t1 t2) t4 = t3 t4 = t7, t1 (t2 t4) = t1 t6 = -t7
    assert np.array_equal(associator(basis(1), basis(2), basis(4)), 2 * basis(7))


def test_alternative_and_quaternion_subalgebra_associative():
    rng = np.random.default_rng(2)
    a, b = rng.standard_normal((2, 50, 8))
    assert np.max(np.abs(associator(a, a, b))) < 1e-13
    assert np.max(np.abs(associator(a, b, b))) < 1e-13
    q = embed_quaternion(rng.standard_normal((3, 50, 4)))
    assert np.max(np.abs(associator(q[0], q[1], q[2]))) < 1e-13


def test_conj_inverse():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((10, 8))
    one = oct_mul(a, oct_inv(a))
    assert np.allclose(one, real(np.ones(10)), atol=1e-14)
    assert np.allclose(oct_conj(oct_mul(a[0], a[1])), oct_mul(oct_conj(a[1]), oct_conj(a[0])), atol=1e-14)
    with pytest.raises(ZeroDivisionError):
        oct_inv(np.zeros(8))


def test_mul_matrices():
    rng = np.random.default_rng(4)
    u, v = rng.standard_normal((2, 8))
    assert np.allclose(right_mul_matrix(v) @ u, oct_mul(u, v), atol=1e-14)
    assert np.allclose(left_mul_matrix(v) @ u, oct_mul(v, u), atol=1e-14)


def test_split_join_roundtrip():
    rng = np.random.default_rng(5)
    o = rng.standard_normal((4, 8))
    parts = oct_split(o)
    assert np.allclose(oct_join(parts), o, atol=1e-15)


def test_t4_identities():
    rng = np.random.default_rng(6)
    for _ in range(20):
        a, b = rng.standard_normal((2, 4))
        assert tau4_identities_check(a, b)
    assert set(tau4_identities(np.ones(4), np.ones(4))) == {
        "t4a", "t4(at4)", "(at4)t4", "a(bt4)", "(at4)b", "(at4)(bt4)"
    }


def test_quaternion_helpers():
    i, j = np.array([0, 1.0, 0, 0]), np.array([0, 0, 1.0, 0])
    assert np.array_equal(quat_mul(i, j), [0, 0, 0, 1.0])
    assert np.array_equal(quat_conj(np.array([1.0, 2, 3, 4])), [1.0, -2, -3, -4])


def test_exp_axis_and_fold():
    th = np.array([0.3, -1.2])
    e = oct_exp_axis(5, th)
    assert np.allclose(e[:, 0], np.cos(th)) and np.allclose(e[:, 5], np.sin(th))
    assert np.allclose(oct_norm(e), 1.0)
    assert np.array_equal(left_fold_product([basis(1), basis(2), basis(4)]), basis(7))
    with pytest.raises(ValueError, match="empty product"):
        left_fold_product([])


@pytest.mark.parametrize("bad", [0, 8, 1.5, True])
def test_check_axis_rejects(bad):
    with pytest.raises(ValueError):
        check_axis(bad)


def test_octonion_constructor():
    assert np.array_equal(octonion(1, 2), [1, 2, 0, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        octonion(*range(9))
    with pytest.raises(ValueError):
        basis(9)
