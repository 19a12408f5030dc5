import numpy as np
import pytest
from sympy import Rational
from sympy.physics.quantum.cg import CG

from qsubfactor.corep import CorepDecomp, fuse
from qsubfactor.errors import DegeneracyError, DomainError
from qsubfactor.uqsl2 import (
    completeness_residual,
    decompose,
    dump_json,
    intertwining_residual,
    irrep,
    isometry_residual,
    module,
    relation_residual,
    spins_of,
    tensor,
)


def test_irrep_trivial():
    V = irrep(0, 0.4)
    assert V.matE.tolist() == [[0.0]] and V.matF.tolist() == [[0.0]] and V.matK.tolist() == [[1.0]]


@pytest.mark.parametrize("q", [0.2, 0.5, 0.8])
def test_irrep_k_convention(q):
    assert np.allclose(np.diag(irrep(1, q).matK), [1 / q, q])
    assert np.allclose(np.diag(irrep(2, q).matK), [q**-2, 1, q**2])


@pytest.mark.parametrize("t", range(7))
@pytest.mark.parametrize("q", [0.3, 0.7])
def test_irrep_relations(t, q):
    assert relation_residual(irrep(t, q)) < 1e-10 * max(1.0, q ** (-2 * t))


def test_irrep_bad_q():
    with pytest.raises(DomainError):
        irrep(1, 1.0)


def test_tensor_examples():
    q = 0.5
    T = tensor(irrep(1, q), irrep(1, q))
    assert np.allclose(np.diag(T.matK), [q**-2, 1, 1, q**2])
    assert relation_residual(tensor(irrep(2, q), irrep(1, q))) < 1e-10
    X = irrep(3, q)
    T0 = tensor(irrep(0, q), X)
    for a, b in ((T0.matE, X.matE), (T0.matF, X.matF), (T0.matK, X.matK)):
        assert np.allclose(a, b)


def test_tensor_mismatched_q():
    with pytest.raises(DomainError):
        tensor(irrep(1, 0.5), irrep(1, 0.6))


def test_coproduct_convention_pinned():
    # E acts as E (x) K + 1 (x) E on the tensor product
    q = 0.45
    A, B = irrep(1, q), irrep(2, q)
    T = tensor(A, B)
    assert np.allclose(T.matE, np.kron(A.matE, B.matK) + np.kron(np.eye(2), B.matE))
    assert np.allclose(T.matF, np.kron(A.matF, np.eye(3)) + np.kron(np.linalg.inv(A.matK), B.matF))


def test_decompose_examples():
    isos = decompose(tensor(irrep(1, 0.5), irrep(1, 0.5)))
    assert spins_of(isos) == CorepDecomp.from_counts({0: 1, 2: 1})
    isos = decompose(tensor(irrep(0, 0.5), irrep(3, 0.5)))
    assert len(isos) == 1 and isos[0].target_spin.twice_ell == 3
    assert np.allclose(np.abs(isos[0].C), np.eye(4))


@pytest.mark.parametrize("q", [0.3, 0.7])
def test_decompose_invariants_all_pairs(q):
    for a in range(7):
        for b in range(7):
            T = tensor(irrep(a, q), irrep(b, q))
            isos = decompose(T)
            assert spins_of(isos) == fuse(CorepDecomp.irrep(a), CorepDecomp.irrep(b))
            assert completeness_residual(isos, T.dim) < 1e-9
            for iso in isos:
                assert isometry_residual(iso) < 1e-9
                assert intertwining_residual(T, iso) < 1e-9
                first = iso.C[:, -1][np.abs(iso.C[:, -1]) > 1e-12][0]
                assert first > 0


def test_decompose_iterated_tensor():
    q = 0.6
    T = tensor(tensor(irrep(1, q), irrep(1, q)), irrep(1, q))
    isos = decompose(T)
    assert spins_of(isos) == CorepDecomp.from_counts({1: 2, 3: 1})
    assert completeness_residual(isos, 8) < 1e-9
    assert max(intertwining_residual(T, i) for i in isos) < 1e-9


def test_decompose_direct_sum_module():
    rep = CorepDecomp.from_counts({1: 2, 2: 1})
    isos = decompose(module(rep, 0.5))
    assert spins_of(isos) == rep


def test_decompose_deterministic():
    a = dump_json(decompose(tensor(irrep(2, 0.35), irrep(3, 0.35))))
    b = dump_json(decompose(tensor(irrep(2, 0.35), irrep(3, 0.35))))
    assert a == b


def test_degeneracy_error_names_weight():
    with pytest.raises(DegeneracyError, match="2m="):
        decompose(tensor(irrep(4, 0.999), irrep(4, 0.999)), rtol=0.9)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_classical_limit_matches_sympy(a, b):
    # at q -> 1 the q-CG coefficients tend to the classical ones (in magnitude)
    isos = decompose(tensor(irrep(a, 0.999), irrep(b, 0.999)))
    j1, j2 = Rational(a, 2), Rational(b, 2)
    for iso in isos:
        t = iso.target_spin.twice_ell
        J = Rational(t, 2)
        for col in range(t + 1):
            M = Rational(2 * col - t, 2)
            for k1 in range(a + 1):
                for k2 in range(b + 1):
                    m1, m2 = Rational(2 * k1 - a, 2), Rational(2 * k2 - b, 2)
                    ref = float(CG(j1, m1, j2, m2, J, M).doit()) if m1 + m2 == M else 0.0
                    got = iso.C[k1 * (b + 1) + k2, col]
                    assert abs(abs(got) - abs(ref)) < 1e-2
