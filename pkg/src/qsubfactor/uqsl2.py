"""Weight-basis models of U_q(sl2) irreducibles and Clebsch-Gordan isometries.

Conventions (all pinned by tests):

* K e_m = q^{2m} e_m, weights m ascending.
* E and F are scaled so that E^T = F K. Together with the coproduct
  Delta(E) = E (x) K + 1 (x) E, Delta(F) = F (x) 1 + K^{-1} (x) F,
  Delta(K) = K (x) K this makes every tensor product a *-representation for
  the standard inner product, so isotypic components are orthogonal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .corep import CorepDecomp, Spin, fuse
from .errors import DegeneracyError, DomainError
from .qnum import check_q

KERNEL_RTOL = 1e-7


def qnumber(n: float, q: float) -> float:
    """[n]_q = (q^n - q^-n)/(q - q^-1) as a float."""
    return (q**n - q ** (-n)) / (q - 1.0 / q)


@dataclass(frozen=True, eq=False)
class IrrepModel:
    spin: Spin
    q: float
    matE: np.ndarray
    matF: np.ndarray
    matK: np.ndarray

    @property
    def factors(self) -> tuple[int, ...]:
        return (self.spin.twice_ell,)

    @property
    def dim(self) -> int:
        return self.spin.dim

    def content(self) -> CorepDecomp:
        return CorepDecomp.irrep(self.spin.twice_ell)


@dataclass(frozen=True, eq=False)
class TensorModel:
    """Action of U_q(sl2) on a tensor product (through the coproduct) or a direct sum."""

    factors: tuple[int, ...]
    q: float
    matE: np.ndarray
    matF: np.ndarray
    matK: np.ndarray
    weights2: np.ndarray = field(repr=False)
    decomp: CorepDecomp | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.matK.shape[0]

    def content(self) -> CorepDecomp:
        """Spin content predicted by the fusion rule."""
        return self.decomp


def irrep(spin: Spin | int, q: float) -> IrrepModel:
    if isinstance(spin, int):
        spin = Spin(spin)
    q = check_q(q)
    t = spin.twice_ell
    n = t + 1
    E = np.zeros((n, n))
    F = np.zeros((n, n))
    # index k <-> weight m = (2k - t)/2; work with twice-weights to stay exact
    for k in range(n - 1):
        m2 = 2 * k - t
        p = qnumber((t - m2) / 2, q) * qnumber((t + m2) / 2 + 1, q)
        E[k + 1, k] = q ** (m2 / 2 + 1) * np.sqrt(p)
        F[k, k + 1] = q ** (-(m2 / 2 + 1)) * np.sqrt(p)
    K = np.diag([q ** (2 * k - t) for k in range(n)])
    return IrrepModel(spin, q, E, F, K)


def _twice_weights(model) -> np.ndarray:
    if isinstance(model, IrrepModel):
        t = model.spin.twice_ell
        return np.array([2 * k - t for k in range(t + 1)])
    return model.weights2


def tensor(A, B) -> TensorModel:
    if A.q != B.q:
        raise DomainError(f"mismatched q: {A.q} vs {B.q}")
    Ia, Ib = np.eye(A.dim), np.eye(B.dim)
    Kinv_a = np.diag(1.0 / np.diag(A.matK))
    E = np.kron(A.matE, B.matK) + np.kron(Ia, B.matE)
    F = np.kron(A.matF, Ib) + np.kron(Kinv_a, B.matF)
    K = np.kron(A.matK, B.matK)
    w = (_twice_weights(A)[:, None] + _twice_weights(B)[None, :]).ravel()
    return TensorModel(A.factors + B.factors, A.q, E, F, K, w, fuse(A.content(), B.content()))


def relation_residual(model, relative: bool = False) -> float:
    """Largest Frobenius residual of KE = q^2 EK, KF = q^-2 FK, [E,F] = (K-K^-1)/(q-q^-1).

    With ``relative`` each residual is divided by the norm of the terms it
    compares; large spins at small q have entries ~q^{-2l} and cancel badly.
    """
    E, F, K, q = model.matE, model.matF, model.matK, model.q
    Kinv = np.diag(1.0 / np.diag(K))
    pairs = [
        (K @ E, q**2 * E @ K),
        (K @ F, q**-2 * F @ K),
        (E @ F - F @ E, (K - Kinv) / (q - 1 / q)),
    ]
    worst = 0.0
    for lhs, rhs in pairs:
        r = np.linalg.norm(lhs - rhs)
        if relative:
            r /= max(np.linalg.norm(E @ F) + np.linalg.norm(F @ E) + np.linalg.norm(rhs), 1.0)
        worst = max(worst, r)
    return float(worst)


@dataclass(frozen=True, eq=False)
class CGIsometry:
    """Columns span one copy of spin ``target_spin``, weights ascending."""

    target_spin: Spin
    C: np.ndarray
    copy: int = 0

    def to_json(self) -> dict:
        return {"twice_ell": self.target_spin.twice_ell, "copy": self.copy, "C": self.C.tolist()}


def _hw_basis(E_w: np.ndarray, expected: int, w2: int, rtol: float) -> np.ndarray:
    """Orthonormal basis of ker(E_w), deterministic (projected unit vectors, index order)."""
    n = E_w.shape[1]
    if expected == 0:
        return np.zeros((n, 0))
    scale = max(np.linalg.norm(E_w, 2) if E_w.size else 0.0, 1.0)
    _, s, vh = np.linalg.svd(E_w, full_matrices=True) if E_w.size else (None, np.zeros(0), np.eye(n))
    s_full = np.zeros(n)
    s_full[: len(s)] = s
    null = vh[s_full <= rtol * scale].T
    if null.shape[1] != expected:
        raise DegeneracyError(
            f"weight space 2m={w2}: kernel of E has dimension {null.shape[1]}, expected {expected} "
            f"(singular values {np.sort(s_full)[:expected + 1]})"
        )
    P = null @ null.T
    vecs: list[np.ndarray] = []
    for i in range(n):
        v = P[:, i].copy()
        for u in vecs:
            v -= (u @ v) * u
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            vecs.append(v / nv)
        if len(vecs) == expected:
            break
    return np.array(vecs).T


def _clean(v: np.ndarray, others: list[np.ndarray]) -> np.ndarray:
    """Gram-Schmidt ``v`` against orthonormal ``others`` (twice, for stability), then normalize."""
    for _ in range(2):
        for u in others:
            v = v - (u @ v) * u
    n = np.linalg.norm(v)
    return v / n if n > 0 else v


def decompose(T, rtol: float = KERNEL_RTOL) -> list[CGIsometry]:
    """Split a tensor model into irreducibles by the highest-weight algorithm.

    Returned in order of discovery: highest weight descending, then index.
    """
    w2 = _twice_weights(T)
    E, F = T.matE, T.matF
    levels = sorted(set(w2.tolist()), reverse=True)
    count = {w: int(np.sum(w2 == w)) for w in levels}
    out: list[CGIsometry] = []
    placed: dict[int, list[np.ndarray]] = {}
    for w in levels:
        if w < 0:
            break
        idx = np.flatnonzero(w2 == w)
        expected = count[w] - count.get(w + 2, 0)
        target = np.flatnonzero(w2 == w + 2)
        E_w = E[np.ix_(target, idx)]
        basis = _hw_basis(E_w, expected, w, rtol)
        for c in range(basis.shape[1]):
            v = np.zeros(T.dim)
            v[idx] = basis[:, c]
            nz = np.flatnonzero(np.abs(v) > 1e-12)
            if nz.size and v[nz[0]] < 0:
                v = -v
            chain = [_clean(v, placed.get(w, []))]
            for step in range(w):
                u = _clean(F @ chain[-1], placed.get(w - 2 * (step + 1), []))
                if np.linalg.norm(u) == 0.0:
                    raise DegeneracyError(f"F-chain from weight 2m={w} vanished early")
                chain.append(u)
            for step, u in enumerate(chain):
                placed.setdefault(w - 2 * step, []).append(u)
            C = np.array(chain[::-1]).T
            copy = sum(1 for iso in out if iso.target_spin.twice_ell == w)
            out.append(CGIsometry(Spin(w), C, copy))
    return out


@lru_cache(maxsize=None)
def cg_pair(ta: int, tb: int, q: float) -> tuple[CGIsometry, ...]:
    """Cached decomposition of V_a (x) V_b for irreducible factors."""
    return tuple(decompose(tensor(irrep(ta, q), irrep(tb, q))))


def completeness_residual(isos, dim: int) -> float:
    S = sum(iso.C @ iso.C.T for iso in isos)
    return float(np.linalg.norm(S - np.eye(dim)))


def isometry_residual(iso: CGIsometry) -> float:
    return float(np.linalg.norm(iso.C.T @ iso.C - np.eye(iso.C.shape[1])))


def intertwining_residual(T, iso: CGIsometry) -> float:
    V = irrep(iso.target_spin, T.q)
    return float(max(
        np.linalg.norm(X @ iso.C - iso.C @ Y)
        for X, Y in ((T.matE, V.matE), (T.matF, V.matF), (T.matK, V.matK))
    ))


def spins_of(isos) -> CorepDecomp:
    counts: dict[int, int] = {}
    for iso in isos:
        counts[iso.target_spin.twice_ell] = counts.get(iso.target_spin.twice_ell, 0) + 1
    return CorepDecomp.from_counts(counts)


def dump_json(isos) -> str:
    return json.dumps([iso.to_json() for iso in isos])


def module(rep: CorepDecomp, q: float) -> TensorModel:
    """Direct sum model of a CorepDecomp in the global (block, copy, weight) basis."""
    parts = [irrep(s, q) for s, m in rep.blocks for _ in range(m)]
    n = sum(p.dim for p in parts)
    E, F, K = np.zeros((n, n)), np.zeros((n, n)), np.zeros((n, n))
    w = []
    start = 0
    for p in parts:
        sl = slice(start, start + p.dim)
        E[sl, sl], F[sl, sl], K[sl, sl] = p.matE, p.matF, p.matK
        w.extend(_twice_weights(p).tolist())
        start += p.dim
    return TensorModel(tuple(s.twice_ell for s, m in rep.blocks for _ in range(m)), q, E, F, K, np.array(w), rep)
