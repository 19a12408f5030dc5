import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import character_fusion, reps
from qsubfactor.corep import (
    CorepDecomp,
    Spin,
    central_projections,
    dim_q,
    dual,
    embed_end,
    end_algebra,
    f_matrix,
    fuse,
    parse_rep,
    qtrace,
)
from qsubfactor.errors import ParseError, ShapeError
from qsubfactor.qnum import LaurentPoly, bar_symmetric, evaluate, qint


def R(spec):
    return parse_rep(spec)


def test_parse_examples():
    assert R("1/2").counts() == {1: 1}
    assert R("2x1/2 + 1").counts() == {1: 2, 2: 1}
    assert R("1/2 + 1/2").counts() == {1: 2}
    assert R("  3x0+ 5/2 +1 ") == CorepDecomp.from_counts({0: 3, 2: 1, 5: 1})


@pytest.mark.parametrize(
    "spec, offset",
    [
        ("1/3", 2),
        ("0x1", 0),
        ("1 +", 3),
        ("", 0),
        ("1/2 ++ 1", 5),
        ("a", 0),
        ("2x", 2),
        ("4/2", 0),
        ("1 1", 2),
    ],
)
def test_parse_errors(spec, offset):
    with pytest.raises(ParseError) as err:
        parse_rep(spec)
    assert err.value.offset == offset


def test_parse_integer_only():
    assert parse_rep("0 + 2x1", integer_only=True).counts() == {0: 1, 2: 2}
    with pytest.raises(ParseError, match="integer-spin"):
        parse_rep("1 + 3/2", integer_only=True)


def test_fuse_examples():
    assert fuse(R("0"), R("5/2")) == R("5/2")
    assert fuse(R("1/2"), R("1/2")) == R("0 + 1") == character_fusion(R("1/2"), R("1/2"))
    assert fuse(R("1"), R("1/2")) == R("1/2 + 3/2") == character_fusion(R("1"), R("1/2"))
    # the character oracle in q: [2][2] = [1] + [3], [3][2] = [2] + [4]
    assert qint(2) * qint(2) == qint(1) + qint(3)
    assert qint(3) * qint(2) == qint(2) + qint(4)


@given(reps(), reps())
def test_fuse_matches_character_oracle(a, b):
    assert fuse(a, b) == character_fusion(a, b)


def test_dual_examples():
    assert dual(R("0")) == R("0")
    assert dual(R("1/2")) == R("1/2")
    assert 0 in fuse(dual(R("1/2")), R("1/2")).counts()
    assert dual(R("2x1 + 3/2")) == R("2x1 + 3/2")


def test_dim_q_examples():
    assert dim_q(R("0")) == LaurentPoly.constant(1)
    assert dim_q(R("1/2")) == LaurentPoly({-1: 1, 1: 1})
    d = dim_q(fuse(R("1/2"), R("1/2")))
    assert d == LaurentPoly({-2: 1, 0: 2, 2: 1}) == dim_q(R("1/2")) ** 2


def test_f_matrix_examples():
    assert f_matrix(R("0")).diagonal == (LaurentPoly.constant(1),)
    F = f_matrix(R("1/2"))
    assert F.diagonal == (LaurentPoly.monomial(-1), LaurentPoly.monomial(1))
    assert F.trace() == dim_q(R("1/2"))
    assert np.allclose(F.matrix(0.5), np.diag([2.0, 0.5]))


def test_f_matrix_convention_pinned():
    # weights ascending carry q^{2m}; the opposite convention would be the bar of each entry
    F = f_matrix(R("1 + 2x1/2"))
    assert [next(iter(d))[0] for d in F.diagonal] == [-1, 1, -1, 1, -2, 0, 2]
    opposite = [d.bar() for d in F.diagonal]
    assert sum(opposite, LaurentPoly()) == F.trace()


@given(reps(max_twice=8, max_mult=4))
def test_trace_f_equals_trace_f_inverse(a):
    F = f_matrix(a)
    assert F.trace() == F.inverse_trace() == dim_q(a)
    assert all(len(d.coeffs) == 1 and next(iter(d))[1] == 1 for d in F.diagonal)


def test_qtrace_examples():
    a = R("2x1/2 + 1")
    for sign in "+-":
        assert abs(qtrace(a, sign, np.eye(a.dim), 0.37) - 1.0) < 1e-14
    assert abs(qtrace(R("1/2"), "-", np.diag([1.0, 0.0]), 0.5) - 0.2) < 1e-15
    for k in range(a.dim):
        e = np.zeros((a.dim, a.dim))
        e[k, k] = 1
        assert qtrace(a, "+", e, 0.4) > 0 and qtrace(a, "-", e, 0.4) > 0
    with pytest.raises(ShapeError):
        qtrace(a, "+", np.eye(3), 0.5)


def test_end_algebra_examples():
    assert end_algebra(R("1/2")).block_sizes == (1,) and end_algebra(R("1/2")).dimension == 1
    e = end_algebra(R("2x1/2 + 1"))
    assert e.block_sizes == (2, 1) and e.dimension == 5
    e = end_algebra(fuse(R("1/2"), fuse(R("1/2"), R("1/2"))))
    assert e.block_sizes == (2, 1) and e.dimension == 5


def test_end_elements_commute_with_f():
    a = R("2x1/2 + 1")
    X = embed_end(a, [np.arange(4.0).reshape(2, 2), np.array([[3.0]])])
    F = f_matrix(a).matrix(0.4)
    assert np.allclose(X @ F, F @ X)
    P = central_projections(a)
    assert np.allclose(sum(P), np.eye(a.dim))
    assert all(np.allclose(p @ p, p) for p in P)


@given(reps(), reps())
def test_fusion_is_ring_homomorphism(a, b):
    assert dim_q(fuse(a, b)) == dim_q(a) * dim_q(b)
    assert fuse(a, b).dim == a.dim * b.dim
    assert fuse(a, b) == fuse(b, a)


@given(reps(max_twice=3, max_blocks=2, max_mult=2), reps(max_twice=3, max_blocks=2, max_mult=2),
       reps(max_twice=3, max_blocks=2, max_mult=2))
def test_fusion_associative(a, b, c):
    assert fuse(fuse(a, b), c) == fuse(a, fuse(b, c))


@given(reps())
def test_dim_q_bar_symmetric(a):
    assert bar_symmetric(dim_q(a))
    assert evaluate(dim_q(a), 0.5) > 0


@pytest.mark.parametrize("q", [0.3, 0.6, 0.9])
@pytest.mark.parametrize("t", range(1, 7))
def test_quantum_dimension_exceeds_classical(q, t):
    assert evaluate(dim_q(CorepDecomp.irrep(t)), q) > t + 1


@given(reps(max_twice=9, max_blocks=4, max_mult=5))
def test_render_parse_round_trip(a):
    assert parse_rep(a.render()) == a
    assert CorepDecomp.from_json(a.to_json()) == a


def test_spin():
    assert Spin(3).weights()[0] == -Spin(3).weights()[-1]
    assert str(Spin(3)) == "3/2" and str(Spin(4)) == "2"
    with pytest.raises(ValueError):
        Spin(-1)
