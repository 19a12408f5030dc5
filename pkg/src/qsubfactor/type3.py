"""Type III analysis of the inclusion M(pi) > N(pi) for a reducible pi.

Only finite-dimensional conclusions are computed: the modular period T_0,
the parity of F_pi^{iT_0} on each block, the factor maps on the flow space
{blocks} x [0, -log q^2), and the three conditional expectations
G (pinching), H (blockwise q-trace) and F (outer q-trace) on the desk-scale
model with E_pi = F o H o G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .corep import CorepDecomp, central_projections, dim_q, embed_end, f_matrix, qint
from .errors import DomainError
from .qnum import LaurentPoly, check_q, evaluate, poly_sum
from .wassermann import LinearMap, ToyAction, fixed_expectation, index_value, partial_qtrace, residual

# Conditions (i)-(iii) on the ambient action are hypotheses, not computed facts.
ASSUMPTIONS = (
    "fixed-point algebra of type III_{q^2}",
    "modular flow of the invariant state has period T_0",
    "a subalgebra Q of the centralizer with trivial relative commutant exists",
)


def t0(q: float) -> float:
    """Period T_0 = -2 pi / log q^2 of the modular flow."""
    q = check_q(q)
    return -2.0 * math.pi / math.log(q * q)


def interval_length(q: float) -> float:
    q = check_q(q)
    return -math.log(q * q)


def parity_scalars(pi: CorepDecomp) -> tuple[int, ...]:
    """(-1)^{2 ell_j} per block."""
    return tuple(-1 if s.twice_ell % 2 else 1 for s in pi.spins)


def modular_phases(pi: CorepDecomp, q: float) -> np.ndarray:
    """exp(i T_0 log f) for every eigenvalue f of F_pi, in the global basis."""
    T = t0(q)
    logs = f_matrix(pi).exponents() * math.log(q)
    return np.exp(1j * T * logs)


def parity_residual(pi: CorepDecomp, q: float) -> float:
    """max |exp(i T_0 log f) - parity of f's block|."""
    phases = modular_phases(pi, q)
    expected = np.concatenate([np.full(m * s.dim, p) for (s, m), p in zip(pi.blocks, parity_scalars(pi))])
    return float(np.max(np.abs(phases - expected)))


def parities_from_phases(pi: CorepDecomp, q: float) -> tuple[int, ...]:
    """Block parities read off F_pi^{iT_0} numerically (independent of spin arithmetic)."""
    phases = modular_phases(pi, q)
    out = []
    for sl in pi.block_slices():
        out.append(1 if np.mean(phases[sl].real) > 0 else -1)
    return tuple(out)


def essentially_type_II(pi: CorepDecomp) -> bool:
    """All occurring spins integral, or all half-integral."""
    odd = {s.twice_ell % 2 for s in pi.spins}
    return len(odd) == 1


def shift_ratio(twice_ell: int) -> Fraction:
    """Displacement of the factor map on a spin block as a fraction of the interval."""
    return Fraction(twice_ell, 2) % 1


@dataclass(frozen=True)
class FactorMaps:
    q: float
    interval_length: float
    ratios: tuple[Fraction, ...]

    @property
    def shifts(self) -> tuple[float, ...]:
        return tuple(float(r) * self.interval_length for r in self.ratios)

    @property
    def n_distinct_shifts(self) -> int:
        return len(set(self.ratios))

    def _check(self, j: int, s: float):
        if not 0 <= j < len(self.ratios):
            raise DomainError(f"block index {j} out of range")
        if not 0.0 <= s < self.interval_length:
            raise DomainError(f"s = {s} outside [0, {self.interval_length})")

    def pi_M(self, j: int, s: float) -> float:
        """s - ell_j log q^2 reduced into [0, -log q^2)."""
        self._check(j, s)
        return (s + self.shifts[j]) % self.interval_length

    def pi_N(self, j: int, s: float) -> float:
        self._check(j, s)
        return s


def factor_maps(pi: CorepDecomp, q: float) -> FactorMaps:
    L = interval_length(q)
    return FactorMaps(q, L, tuple(shift_ratio(s.twice_ell) for s in pi.spins))


@dataclass(frozen=True)
class BlockInfo:
    mult: int
    twice_ell: int
    dim_q: float
    index: float

    @property
    def ell(self) -> Fraction:
        return Fraction(self.twice_ell, 2)


@dataclass(frozen=True)
class Type3Report:
    q: float
    T0: float
    interval_length: float
    parities: tuple[int, ...]
    essentially_type_II: bool
    shifts: tuple[float, ...]
    blocks: tuple[BlockInfo, ...]
    assumptions: tuple[str, ...] = ASSUMPTIONS

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "T0": self.T0,
            "interval_length": self.interval_length,
            "parities": list(self.parities),
            "essentially_type_II": self.essentially_type_II,
            "shifts": list(self.shifts),
            "blocks": [
                {"mult": b.mult, "twice_ell": b.twice_ell, "dim_q": b.dim_q, "index": b.index} for b in self.blocks
            ],
            "assumptions": list(self.assumptions),
        }

    def to_text(self) -> str:
        lines = [
            f"q                    {self.q:.12g}",
            f"T0                   {self.T0:.12g}",
            f"interval_length      {self.interval_length:.12g}",
            f"essentially_type_II  {str(self.essentially_type_II).lower()}",
            "",
            f"{'block':>5} {'spin':>6} {'mult':>5} {'parity':>7} {'shift':>14} {'dim_q':>14} {'index':>14}",
        ]
        for j, (b, p, s) in enumerate(zip(self.blocks, self.parities, self.shifts)):
            spin = str(b.twice_ell // 2) if b.twice_ell % 2 == 0 else f"{b.twice_ell}/2"
            lines.append(f"{j:>5} {spin:>6} {b.mult:>5} {p:>+7d} {s:>14.10f} {b.dim_q:>14.10f} {b.index:>14.10f}")
        return "\n".join(lines)


def block_info(pi: CorepDecomp, q: float) -> tuple[BlockInfo, ...]:
    out = []
    for s, m in pi.blocks:
        irr = CorepDecomp.irrep(s.twice_ell)
        out.append(BlockInfo(m, s.twice_ell, evaluate(dim_q(irr), q), index_value(irr, q)))
    return tuple(out)


def type3_report(pi: CorepDecomp, q: float) -> Type3Report:
    fm = factor_maps(pi, q)
    return Type3Report(
        q=check_q(q),
        T0=t0(q),
        interval_length=fm.interval_length,
        parities=parity_scalars(pi),
        essentially_type_II=essentially_type_II(pi),
        shifts=fm.shifts,
        blocks=block_info(pi, q),
    )


def _superop(f: Callable[[np.ndarray], np.ndarray], n: int) -> np.ndarray:
    cols = []
    for k in range(n * n):
        e = np.zeros(n * n)
        e[k] = 1.0
        cols.append(f(e.reshape(n, n)).ravel())
    return np.array(cols).T


@dataclass(frozen=True, eq=False)
class ThreeStep:
    """E_pi = F o H o G on B(V_pi) (x) B(V_sigma), with data per central block."""

    pi: CorepDecomp
    act: ToyAction
    blocks: tuple[BlockInfo, ...]
    projections: tuple[np.ndarray, ...] = field(repr=False)
    weights: tuple[float, ...] = ()  # tau_q^{(pi,-)}(p_j)

    @property
    def q(self) -> float:
        return self.act.q

    @property
    def n(self) -> int:
        return self.pi.dim * self.act.dim

    def _lift(self, p: np.ndarray) -> np.ndarray:
        return np.kron(p, np.eye(self.act.dim))

    def outer_trace(self, X: np.ndarray) -> np.ndarray:
        """(tau_q^{(pi,-)} (x) id)(X) in B(V_sigma)."""
        return partial_qtrace(self.pi, -1, self.act.dim, self.q)(X)

    def G(self, X: np.ndarray) -> np.ndarray:
        """Pinching by the central projections of End(pi)."""
        out = np.zeros_like(X, dtype=float)
        for p in self.projections:
            P = self._lift(p)
            out = out + P @ X @ P
        return out

    def H(self, X: np.ndarray) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        for p, w in zip(self.projections, self.weights):
            Z = self.outer_trace(X @ self._lift(p)) / w
            out = out + np.kron(p, Z)
        return out

    def F(self, X: np.ndarray) -> np.ndarray:
        """E_pi restricted to the middle algebra, landing in 1 (x) B(V_sigma)."""
        return np.kron(np.eye(self.pi.dim), self.outer_trace(X))

    def E_pi(self, X: np.ndarray) -> np.ndarray:
        return np.kron(np.eye(self.pi.dim), self.outer_trace(X))

    def as_map(self, name: str) -> LinearMap:
        f = getattr(self, name)
        return LinearMap(_superop(f, self.n), self.n, self.n)

    def block_H(self, j: int, Y: np.ndarray) -> np.ndarray:
        """(tau_{m_j} (x) tau_q^{(pi_j,-)} (x) id)(Y) for Y on C^{m_j} (x) V_{pi_j} (x) V_sigma."""
        b = self.blocks[j]
        d, ns = b.twice_ell + 1, self.act.dim
        irr = CorepDecomp.irrep(b.twice_ell)
        w = f_matrix(irr).values(self.q, -1) / evaluate(dim_q(irr), self.q)
        Y = Y.reshape(b.mult, d, ns, b.mult, d, ns)
        return np.einsum("ckackb,k->ab", Y, w) / b.mult


def three_step_decomposition(pi: CorepDecomp, act: ToyAction, q: float) -> ThreeStep:
    if act.q != q:
        raise DomainError(f"action is at q={act.q}, requested q={q}")
    projs = tuple(central_projections(pi))
    F = f_matrix(pi).values(q, -1)
    d = evaluate(dim_q(pi), q)
    weights = tuple(float(np.dot(F, np.diag(p))) / d for p in projs)
    return ThreeStep(pi, act, block_info(pi, q), projs, weights)


def verify_composition(pi: CorepDecomp, act: ToyAction, q: float) -> float:
    """Residual of E_pi against F o H o G on the fixed-point algebra M(pi)."""
    ts = three_step_decomposition(pi, act, q)
    onto_M = fixed_expectation(pi, act)
    lhs = ts.as_map("E_pi") @ onto_M
    rhs = ts.as_map("F") @ ts.as_map("H") @ ts.as_map("G") @ onto_M
    return residual(lhs, rhs)


def block_h_residual(ts: ThreeStep) -> float:
    """Max distance between H on block j and tau_{m_j} (x) E_{pi_j}, over matrix units of M(pi)."""
    onto_M = fixed_expectation(ts.pi, ts.act)
    ns = ts.act.dim
    worst = 0.0
    for j, (p, sl) in enumerate(zip(ts.projections, ts.pi.block_slices())):
        rows = np.arange(ts.n).reshape(ts.pi.dim, ns)[sl].ravel()
        for k in range(ts.n * ts.n):
            e = np.zeros(ts.n * ts.n)
            e[k] = 1.0
            X = onto_M(e.reshape(ts.n, ts.n))
            HX = ts.H(X)
            Z = HX[np.ix_(rows, rows)].reshape(sl.stop - sl.start, ns, sl.stop - sl.start, ns)
            # H(X) on block j is p_j (x) Z_j; read Z_j off any diagonal entry of the p_j factor
            Zj = Z[0, :, 0, :]
            Pj = ts._lift(p)
            expected = ts.block_H(j, (Pj @ X @ Pj)[np.ix_(rows, rows)])
            worst = max(worst, float(np.linalg.norm(Zj - expected)))
    return worst


def end_qtrace_identity(pi: CorepDecomp, blocks: Sequence[Sequence[Sequence]]) -> tuple[LaurentPoly, LaurentPoly]:
    """Exact check of Tr(F^{-1} X) = sum_j tr(X_j) [2 l_j + 1]_q for X in End(pi).

    Returns (lhs, rhs); tau^- of both sides divides by the same dim_q(pi).
    ``blocks`` are rational m_j x m_j matrices.
    """
    Finv = [d.bar() for d in f_matrix(pi).diagonal]
    lhs = LaurentPoly()
    pos = 0
    for (s, m), X in zip(pi.blocks, blocks):
        for c in range(m):
            for k in range(s.dim):
                lhs = lhs + Finv[pos] * Fraction(X[c][c])
                pos += 1
    rhs = poly_sum(sum((Fraction(X[c][c]) for c in range(m)), Fraction(0)) * qint(s.dim) for (s, m), X in zip(pi.blocks, blocks))
    return lhs, rhs
