"""Residual suites behind ``qsubfactor verify``.

Each suite returns ``{check_name: residual}``; a check passes when its
residual is at most the tolerance. Residuals are nonnegative by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from . import haar as H
from .corep import CorepDecomp, fuse
from .type3 import parity_residual, verify_composition
from .uqsl2 import (
    completeness_residual,
    decompose,
    intertwining_residual,
    irrep,
    isometry_residual,
    spins_of,
    tensor,
)
from .wassermann import ToyAction, fixed_expectation, lemma1_check, residual

TARGETS = ("cg", "composition", "haar", "lemma1", "relations")


@dataclass
class VerifyConfig:
    q: float = 0.5
    rep: CorepDecomp = field(default_factory=lambda: CorepDecomp.irrep(1))
    sigma: CorepDecomp = field(default_factory=lambda: CorepDecomp.irrep(1))
    tol: float = 1e-8
    max_twice_cg: int = 6
    max_twice_haar: int = 2
    seed: int = 0


def relations_suite(cfg: VerifyConfig) -> dict[str, float]:
    q = cfg.q
    x, u, v, y = (H.generator(n, q) for n in "xuvy")
    one = H.PWElement.unit(q)

    def d(a, b):
        return (a - b).norm()

    return {
        "relations.ux=qxu": d(u * x, q * (x * u)),
        "relations.vx=qxv": d(v * x, q * (x * v)),
        "relations.yu=quy": d(y * u, q * (u * y)),
        "relations.yv=qvy": d(y * v, q * (v * y)),
        "relations.uv=vu": d(u * v, v * u),
        "relations.x*=y": d(H.star(x), y),
        "relations.u*=-v/q": d(H.star(u), (-1.0 / q) * v),
        "relations.unitary_row1": d(x * H.star(x) + u * H.star(u), one),
        "relations.unitary_row2": d(v * H.star(v) + y * H.star(y), one),
        "relations.unitary_offdiag": d(x * H.star(v) + u * H.star(y), H.PWElement.zero(q)),
        "relations.unitary_col1": d(H.star(x) * x + H.star(v) * v, one),
        "relations.unitary_col2": d(H.star(u) * u + H.star(y) * y, one),
    }


def sample_elements(q: float, max_twice: int) -> list[H.PWElement]:
    """All basis symbols with 2l <= max_twice and all products of two of them."""
    syms = [H.PWElement.symbol(q, t, i, j) for t in range(max_twice + 1) for i in range(1, t + 2) for j in range(1, t + 2)]
    return syms + [H.multiply(a, b) for a, b in iproduct(syms, syms)]


def haar_suite(cfg: VerifyConfig) -> dict[str, float]:
    q = cfg.q
    samples = sample_elements(q, cfg.max_twice_haar)
    one = H.PWElement.unit(q)
    left = right = 0.0
    for A in samples:
        D = H.delta(A)
        left = max(left, (H.haar_left(D, q) - H.haar(A) * one).norm())
        right = max(right, (H.haar_right(D, q) - H.haar(A) * one).norm())
    rng = np.random.default_rng(cfg.seed)
    syms = samples[: sum((t + 1) ** 2 for t in range(cfg.max_twice_haar + 1))]
    positivity = 0.0
    anti = 0.0
    for _ in range(20):
        c = rng.normal(size=len(syms))
        A = H.PWElement(q, {next(iter(s.terms)): ci for s, ci in zip(syms, c)})
        positivity = max(positivity, -H.haar(H.multiply(H.star(A), A)), -H.haar(H.multiply(A, H.star(A))))
        c2 = rng.normal(size=len(syms))
        B = H.PWElement(q, {next(iter(s.terms)): ci for s, ci in zip(syms, c2)})
        anti = max(anti, (H.star(A * B) - H.star(B) * H.star(A)).norm())
    unit = 0.0
    for t in range(cfg.max_twice_haar + 1):
        U = H.corep_matrix(t, q)
        n = t + 1
        for i in range(n):
            for j in range(n):
                row = H.PWElement.zero(q)
                col = H.PWElement.zero(q)
                for k in range(n):
                    row = row + U[i][k] * H.star(U[j][k])
                    col = col + H.star(U[k][i]) * U[k][j]
                target = one if i == j else H.PWElement.zero(q)
                unit = max(unit, (row - target).norm(), (col - target).norm())
    mult = 0.0
    for a in syms[: 1 + 4]:
        for b in syms:
            lhs = H.delta(H.multiply(a, b))
            rhs = H.multiply_tensor(H.delta(a), H.delta(b), q)
            mult = max(mult, H.tensor_distance(lhs, rhs))
    return {
        "haar.delta_multiplicative": mult,
        "haar.left_invariance": left,
        "haar.right_invariance": right,
        "haar.positivity": max(positivity, 0.0),
        "haar.star_antihomomorphism": anti,
        "haar.unitarity": unit,
    }


def cg_suite(cfg: VerifyConfig) -> dict[str, float]:
    iso_r = comp_r = inter_r = 0.0
    mismatches = 0
    for a in range(cfg.max_twice_cg + 1):
        for b in range(cfg.max_twice_cg + 1):
            T = tensor(irrep(a, cfg.q), irrep(b, cfg.q))
            isos = decompose(T)
            comp_r = max(comp_r, completeness_residual(isos, T.dim))
            for iso in isos:
                iso_r = max(iso_r, isometry_residual(iso))
                inter_r = max(inter_r, intertwining_residual(T, iso))
            if spins_of(isos) != fuse(CorepDecomp.irrep(a), CorepDecomp.irrep(b)):
                mismatches += 1
    return {
        "cg.completeness": comp_r,
        "cg.intertwining": inter_r,
        "cg.isometry": iso_r,
        "cg.spins_vs_fusion": float(mismatches),
    }


def lemma1_suite(cfg: VerifyConfig) -> dict[str, float]:
    act = ToyAction(cfg.sigma, cfg.q)
    E = fixed_expectation(cfg.rep, act)
    return {
        "lemma1.identity": lemma1_check(cfg.rep, act),
        "lemma1.idempotence": residual(E @ E, E),
    }


def composition_suite(cfg: VerifyConfig) -> dict[str, float]:
    act = ToyAction(cfg.sigma, cfg.q)
    return {
        "composition.E=FHG": verify_composition(cfg.rep, act, cfg.q),
        "composition.parity": parity_residual(cfg.rep, cfg.q),
    }


SUITES = {
    "cg": cg_suite,
    "composition": composition_suite,
    "haar": haar_suite,
    "lemma1": lemma1_suite,
    "relations": relations_suite,
}


def run(target: str, cfg: VerifyConfig) -> dict[str, float]:
    """Run one suite or ``all``; results sorted by check name."""
    names = TARGETS if target == "all" else (target,)
    out: dict[str, float] = {}
    for name in names:
        out.update(SUITES[name](cfg))
    return dict(sorted(out.items()))
