"""Wassermann-type inclusions at desk scale.

The action Gamma is modelled as Ad(sigma) on the full matrix algebra
B(V_sigma). For pi a second corepresentation the relevant action on
B(V_pi) (x) B(V_sigma) is Ad u(pi (x) sigma), and

    E(X) = (id (x) h)( u (X (x) 1) u^* )

is the projection onto its fixed points. Entries of u(pi (x) sigma) are
Peter-Weyl elements, so E is computed exactly up to Clebsch-Gordan roundoff.

Linear maps on matrices are stored as ``(n*n, n*n)`` arrays acting on
row-major ``X.ravel()``. The basis of V_pi (x) V_sigma is the Kronecker
ordering of the two global bases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .corep import CorepDecomp, dim_q, dual, end_algebra, f_matrix, fuse, fuse_spins
from .errors import DomainError, ShapeError
from .haar import Symbol, multiply_symbols, star, PWElement, haar, multiply
from .qnum import LaurentPoly, check_q, evaluate


@dataclass(frozen=True)
class ToyAction:
    """Gamma = Ad sigma on B(V_sigma)."""

    sigma: CorepDecomp
    q: float

    def __post_init__(self):
        check_q(self.q)

    @property
    def dim(self) -> int:
        return self.sigma.dim


def corep_symbols(rep: CorepDecomp) -> list[list[Symbol | None]]:
    """u(rep) in the global basis: block diagonal, one u^l per copy."""
    labels = rep.basis()
    spins = [s.twice_ell for s, _ in rep.blocks]
    out: list[list[Symbol | None]] = []
    for j1, c1, k1 in labels:
        row = []
        for j2, c2, k2 in labels:
            row.append((spins[j1], k1 + 1, k2 + 1) if (j1, c1) == (j2, c2) else None)
        out.append(row)
    return out


def _symbol_index(max_twice: int) -> dict[Symbol, int]:
    idx: dict[Symbol, int] = {}
    for t in range(max_twice + 1):
        for i in range(1, t + 2):
            for j in range(1, t + 2):
                idx[(t, i, j)] = len(idx)
    return idx


@lru_cache(maxsize=None)
def _gram(max_twice: int, q: float) -> np.ndarray:
    """G[s, t] = h(sym_s star(sym_t)); block diagonal in the spin."""
    idx = _symbol_index(max_twice)
    G = np.zeros((len(idx), len(idx)))
    for s, a in idx.items():
        for t, b in idx.items():
            if s[0] != t[0]:
                continue
            A = PWElement(q, {s: 1.0})
            B = star(PWElement(q, {t: 1.0}))
            G[a, b] = haar(multiply(A, B))
    return G


def coefficient_vectors(pi: CorepDecomp, sigma: CorepDecomp, q: float) -> tuple[np.ndarray, int]:
    """V[a, c, :] = Peter-Weyl coefficients of u(pi (x) sigma)_{ac}."""
    up, us = corep_symbols(pi), corep_symbols(sigma)
    max_twice = max(s.twice_ell for s in pi.spins) + max(s.twice_ell for s in sigma.spins)
    idx = _symbol_index(max_twice)
    n1, n2 = pi.dim, sigma.dim
    N = n1 * n2
    V = np.zeros((N, N, len(idx)))
    for a1 in range(n1):
        for c1 in range(n1):
            s1 = up[a1][c1]
            if s1 is None:
                continue
            for a2 in range(n2):
                for c2 in range(n2):
                    s2 = us[a2][c2]
                    if s2 is None:
                        continue
                    for sym, c in multiply_symbols(q, s1, s2).items():
                        V[a1 * n2 + a2, c1 * n2 + c2, idx[sym]] += c
    return V, max_twice


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Linear map between matrix spaces, as a matrix on row-major vectorizations."""

    matrix: np.ndarray
    n_in: int
    n_out: int

    def __call__(self, X) -> np.ndarray:
        X = np.asarray(X)
        if X.shape != (self.n_in, self.n_in):
            raise ShapeError(f"expected {self.n_in}x{self.n_in} input, got {X.shape}")
        return (self.matrix @ X.ravel()).reshape(self.n_out, self.n_out)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.n_out != self.n_in:
            raise ShapeError("incompatible compositions")
        return LinearMap(self.matrix @ other.matrix, other.n_in, self.n_out)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix - other.matrix, self.n_in, self.n_out)

    def rank(self, tol: float = 1e-9) -> int:
        return int(np.linalg.matrix_rank(self.matrix, tol=tol))


def residual(A: LinearMap, B: LinearMap) -> float:
    """Frobenius distance of two maps over the matrix-unit basis, divided by sqrt(#units).

    This is the root-mean-square of ||A(e_ij) - B(e_ij)||_F over all units.
    """
    if A.matrix.shape != B.matrix.shape:
        raise ShapeError(f"maps have shapes {A.matrix.shape} and {B.matrix.shape}")
    return float(np.linalg.norm(A.matrix - B.matrix) / A.n_in)


@lru_cache(maxsize=None)
def _fixed_expectation(pi: CorepDecomp, sigma: CorepDecomp, q: float) -> LinearMap:
    V, max_twice = coefficient_vectors(pi, sigma, q)
    G = _gram(max_twice, q)
    N = V.shape[0]
    # E(X)_{ab} = sum_{cd} X_{cd} h(U_ac star(U_bd))
    K = np.einsum("acs,st,bdt->abcd", V, G, V, optimize=True)
    return LinearMap(K.reshape(N * N, N * N), N, N)


def fixed_expectation(pi: CorepDecomp, act: ToyAction) -> LinearMap:
    """Haar-averaged conditional expectation onto (B(V_pi) (x) B(V_sigma))^{Ad(pi (x) sigma)}."""
    return _fixed_expectation(pi, act.sigma, act.q)


def partial_qtrace(pi: CorepDecomp, sign: int, n_other: int, q: float) -> LinearMap:
    """(tau_q^{(pi, sign)} (x) id) : B(V_pi) (x) B(V_other) -> B(V_other)."""
    w = f_matrix(pi).values(q, sign) / evaluate(dim_q(pi), q)
    n1 = pi.dim
    N = n1 * n_other
    M = np.zeros((n_other * n_other, N * N))
    for a in range(n_other):
        for b in range(n_other):
            for c in range(n1):
                M[a * n_other + b, (c * n_other + a) * N + (c * n_other + b)] = w[c]
    return LinearMap(M, N, n_other)


def lemma1_maps(pi: CorepDecomp, act: ToyAction) -> tuple[LinearMap, LinearMap]:
    """Both sides of (tau^- (x) id) o E_{Ad pi (x) Gamma} = E_Gamma o (tau^+ (x) id)."""
    n = act.dim
    lhs = partial_qtrace(pi, -1, n, act.q) @ fixed_expectation(pi, act)
    rhs = fixed_expectation(CorepDecomp.irrep(0), act) @ partial_qtrace(pi, +1, n, act.q)
    return lhs, rhs


def lemma1_check(pi: CorepDecomp, act: ToyAction) -> float:
    lhs, rhs = lemma1_maps(pi, act)
    return residual(lhs, rhs)


def index(pi: CorepDecomp) -> LaurentPoly:
    """Jones index of the Wassermann inclusion: dim_q(pi)^2."""
    return dim_q(pi) ** 2


def index_value(pi: CorepDecomp, q: float) -> float:
    return evaluate(index(pi), q)


def branching(rep: CorepDecomp, factor: CorepDecomp, target: CorepDecomp) -> list[list[int]]:
    """G[i][j] = multiplicity of target spin j in (spin i of rep) (x) factor."""
    col = {s.twice_ell: j for j, s in enumerate(target.spins)}
    G = [[0] * len(target.blocks) for _ in rep.blocks]
    for i, s in enumerate(rep.spins):
        for t, mt in factor.blocks:
            for u in fuse_spins(s.twice_ell, t.twice_ell):
                G[i][col[u]] += mt
    return G


@dataclass(frozen=True)
class TowerData:
    rhos: tuple[CorepDecomp, ...]
    end_dims: tuple[tuple[int, ...], ...]
    inclusion_matrices: tuple[tuple[tuple[int, ...], ...], ...]
    index_poly: LaurentPoly

    def end_dimensions(self) -> list[int]:
        """dim End(rho_k) = sum of squared multiplicities."""
        return [sum(m * m for m in d) for d in self.end_dims]

    def to_json(self, q: float | None = None) -> dict:
        idx: dict = {"poly": self.index_poly.to_text()}
        if q is not None:
            idx["value"] = evaluate(self.index_poly, q)
        return {
            "rhos": [r.to_json() for r in self.rhos],
            "end_dims": [list(d) for d in self.end_dims],
            "inclusion_matrices": [[list(row) for row in G] for G in self.inclusion_matrices],
            "index": idx,
        }

    def to_dot(self) -> str:
        """Bratteli diagram of the tower in Graphviz DOT."""
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        for k, rho in enumerate(self.rhos):
            for s, m in rho.blocks:
                lines.append(f'  "{k}:{s}" [label="{s} ({m})"];')
        for k, G in enumerate(self.inclusion_matrices):
            src, dst = self.rhos[k].spins, self.rhos[k + 1].spins
            for i, row in enumerate(G):
                for j, mult in enumerate(row):
                    for _ in range(mult):
                        lines.append(f'  "{k}:{src[i]}" -> "{k + 1}:{dst[j]}";')
        lines.append("}")
        return "\n".join(lines)


def jones_tower(pi: CorepDecomp, n: int) -> TowerData:
    """rho_0 = pi, rho_{2m+1} = dual(pi) (x) rho_{2m}, rho_{2m} = pi (x) rho_{2m-1}."""
    if n < 0:
        raise DomainError(f"tower depth must be >= 0, got {n}")
    rhos = [pi]
    mats = []
    for k in range(1, n + 1):
        factor = dual(pi) if k % 2 else pi
        nxt = fuse(factor, rhos[-1])
        mats.append(tuple(tuple(r) for r in branching(rhos[-1], factor, nxt)))
        rhos.append(nxt)
    dims = tuple(end_algebra(r).block_sizes for r in rhos)
    return TowerData(tuple(rhos), dims, tuple(mats), index(pi))


def bratteli_consistent(tower: TowerData) -> bool:
    for k, G in enumerate(tower.inclusion_matrices):
        prev, nxt = tower.end_dims[k], tower.end_dims[k + 1]
        pushed = [sum(prev[i] * G[i][j] for i in range(len(prev))) for j in range(len(nxt))]
        if pushed != list(nxt):
            return False
    return True


def tower_json(tower: TowerData, q: float | None = None) -> str:
    return json.dumps(tower.to_json(q))
