"""The coordinate *-algebra of SU_q(2) in Peter-Weyl normal form.

Elements are real combinations of matrix-coefficient symbols
``u^l_{ij}`` (1-based, weights ascending). Products are expanded through the
Clebsch-Gordan isometries of :mod:`qsubfactor.uqsl2`:

    u^a_{i1 j1} u^b_{i2 j2} = sum_l sum_{r,s} C_l[(i1,i2), r] C_l[(j1,j2), s] u^l_{rs}

so the Haar state is just the coefficient of the unit symbol.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .corep import Spin
from .errors import DomainError
from .qnum import check_q
from .uqsl2 import cg_pair

Symbol = tuple[int, int, int]  # (twice_ell, i, j), 1-based
UNIT: Symbol = (0, 1, 1)
ZERO_RTOL = 1e-14


def _prune(terms: Mapping[Symbol, float]) -> dict[Symbol, float]:
    """Drop exact zeros and roundoff below ZERO_RTOL times the largest coefficient."""
    if not terms:
        return {}
    cut = ZERO_RTOL * max(abs(v) for v in terms.values())
    return {k: float(v) for k, v in sorted(terms.items()) if abs(v) > cut}


@dataclass(frozen=True, eq=False)
class PWElement:
    q: float
    terms: Mapping[Symbol, float]

    def __post_init__(self):
        object.__setattr__(self, "terms", _prune(self.terms))

    @classmethod
    def symbol(cls, q: float, twice_ell: int, i: int, j: int, coeff: float = 1.0) -> "PWElement":
        if not (1 <= i <= twice_ell + 1 and 1 <= j <= twice_ell + 1):
            raise DomainError(f"index ({i},{j}) out of range for twice_ell={twice_ell}")
        return cls(q, {(twice_ell, i, j): coeff})

    @classmethod
    def unit(cls, q: float) -> "PWElement":
        return cls(q, {UNIT: 1.0})

    @classmethod
    def zero(cls, q: float) -> "PWElement":
        return cls(q, {})

    def _check(self, other: "PWElement"):
        if other.q != self.q:
            raise DomainError(f"mismatched q: {self.q} vs {other.q}")

    def __add__(self, other: "PWElement") -> "PWElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return PWElement(self.q, out)

    def __sub__(self, other: "PWElement") -> "PWElement":
        return self + (-1.0) * other

    def __rmul__(self, c: float) -> "PWElement":
        return PWElement(self.q, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PWElement):
            return multiply(self, other)
        return other * self

    def __neg__(self):
        return (-1.0) * self

    def norm(self) -> float:
        return float(np.sqrt(sum(v * v for v in self.terms.values())))

    def max_spin(self) -> int:
        return max((k[0] for k in self.terms), default=0)

    def __repr__(self):
        return f"PWElement(q={self.q}, {self.to_text()})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v:.12g}*{symbol_text(k)}" for k, v in self.terms.items())

    def to_json(self) -> str:
        return json.dumps({symbol_text(k): v for k, v in self.terms.items()})


def symbol_text(sym: Symbol) -> str:
    return f"u[ℓ={Spin(sym[0])};{sym[1]},{sym[2]}]"


# [[x, u], [v, y]] is u^{1/2} read in weight-descending order; with the
# coproduct of uqsl2 this is the assignment under which ux = q xu and
# u^* = -q^{-1} v hold (the ascending reading gives the q -> 1/q relations).
GENERATORS = {"x": (2, 2), "u": (2, 1), "v": (1, 2), "y": (1, 1)}


def generator(name: str, q: float) -> PWElement:
    """x, u, v, y as entries of the spin-1/2 coefficient matrix."""
    q = check_q(q)
    try:
        i, j = GENERATORS[name]
    except KeyError:
        raise DomainError(f"unknown generator {name!r}; expected one of x, u, v, y") from None
    return PWElement.symbol(q, 1, i, j)


@lru_cache(maxsize=None)
def _product_table(ta: int, tb: int, q: float) -> tuple[tuple[int, np.ndarray], ...]:
    return tuple((iso.target_spin.twice_ell, iso.C) for iso in cg_pair(ta, tb, q))


def multiply_symbols(q: float, a: Symbol, b: Symbol) -> dict[Symbol, float]:
    if a == UNIT:
        return {b: 1.0}
    if b == UNIT:
        return {a: 1.0}
    ta, i1, j1 = a
    tb, i2, j2 = b
    row = (i1 - 1) * (tb + 1) + (i2 - 1)
    col = (j1 - 1) * (tb + 1) + (j2 - 1)
    out: dict[Symbol, float] = {}
    for t, C in _product_table(ta, tb, q):
        coeff = np.outer(C[row], C[col])
        for r in range(t + 1):
            for s in range(t + 1):
                c = coeff[r, s]
                if c != 0.0:
                    key = (t, r + 1, s + 1)
                    out[key] = out.get(key, 0.0) + c
    return out


def multiply(A: PWElement, B: PWElement) -> PWElement:
    A._check(B)
    out: dict[Symbol, float] = {}
    for ka, va in A.terms.items():
        for kb, vb in B.terms.items():
            for k, c in multiply_symbols(A.q, ka, kb).items():
                out[k] = out.get(k, 0.0) + va * vb * c
    return PWElement(A.q, out)


def product(elems: Iterable[PWElement]) -> PWElement:
    elems = list(elems)
    out = elems[0]
    for e in elems[1:]:
        out = multiply(out, e)
    return out


@lru_cache(maxsize=None)
def conjugation_matrix(twice_ell: int, q: float) -> np.ndarray:
    """W with the spin-0 vector of V_l (x) V_l equal to vec(W).

    Invariance of that vector under u (x) u plus unitarity of u gives
    u_{kj}^* = (W^T u W^{-T})_{kj}.
    """
    for iso in cg_pair(twice_ell, twice_ell, q):
        if iso.target_spin.twice_ell == 0:
            return iso.C[:, 0].reshape(twice_ell + 1, twice_ell + 1)
    raise AssertionError("spin 0 missing from V (x) V")


@lru_cache(maxsize=None)
def _star_table(twice_ell: int, q: float) -> np.ndarray:
    """S[k, j, a, b] = coefficient of u_{ab} in u_{kj}^*."""
    W = conjugation_matrix(twice_ell, q)
    Winv = np.linalg.inv(W)
    # (W^T u W^{-T})_{kj} = sum_{a,b} W[a,k] u[a,b] Winv[j,b]
    return np.einsum("ak,jb->kjab", W, Winv)


def star(A: PWElement) -> PWElement:
    """Involution; coefficients are real so only the symbols transform."""
    out: dict[Symbol, float] = {}
    for (t, k, j), v in A.terms.items():
        S = _star_table(t, A.q)[k - 1, j - 1]
        for a in range(t + 1):
            for b in range(t + 1):
                c = S[a, b]
                if c != 0.0:
                    key = (t, a + 1, b + 1)
                    out[key] = out.get(key, 0.0) + v * c
    return PWElement(A.q, out)


def haar(A: PWElement) -> float:
    return float(A.terms.get(UNIT, 0.0))


Tensor2 = dict[tuple[Symbol, Symbol], float]


def delta(A: PWElement) -> Tensor2:
    """Comultiplication, u^l_{ij} -> sum_k u^l_{ik} (x) u^l_{kj}, as a map of symbol pairs."""
    out: Tensor2 = {}
    for (t, i, j), v in A.terms.items():
        for k in range(1, t + 2):
            key = ((t, i, k), (t, k, j))
            out[key] = out.get(key, 0.0) + v
    return out


def haar_left(T: Tensor2, q: float) -> PWElement:
    """(h (x) id)(T)."""
    out: dict[Symbol, float] = {}
    for (s1, s2), v in T.items():
        if s1 == UNIT:
            out[s2] = out.get(s2, 0.0) + v
    return PWElement(q, out)


def haar_right(T: Tensor2, q: float) -> PWElement:
    """(id (x) h)(T)."""
    out: dict[Symbol, float] = {}
    for (s1, s2), v in T.items():
        if s2 == UNIT:
            out[s1] = out.get(s1, 0.0) + v
    return PWElement(q, out)


def multiply_tensor(S: Tensor2, T: Tensor2, q: float) -> Tensor2:
    """Product in A (x) A: (a (x) b)(c (x) d) = ac (x) bd."""
    out: Tensor2 = {}
    for (a, b), v in S.items():
        for (c, d), w in T.items():
            left = multiply_symbols(q, a, c)
            right = multiply_symbols(q, b, d)
            for k1, c1 in left.items():
                for k2, c2 in right.items():
                    key = (k1, k2)
                    out[key] = out.get(key, 0.0) + v * w * c1 * c2
    return _prune_tensor(out)


def tensor_from_pairs(q: float, pairs: Iterable[tuple[PWElement, PWElement]]) -> Tensor2:
    out: Tensor2 = {}
    for a, b in pairs:
        for ka, va in a.terms.items():
            for kb, vb in b.terms.items():
                out[(ka, kb)] = out.get((ka, kb), 0.0) + va * vb
    return _prune_tensor(out)


def _prune_tensor(out: Tensor2) -> Tensor2:
    if not out:
        return {}
    cut = ZERO_RTOL * max(abs(v) for v in out.values())
    return {k: v for k, v in out.items() if abs(v) > cut}


def tensor_distance(S: Tensor2, T: Tensor2) -> float:
    keys = set(S) | set(T)
    return float(np.sqrt(sum((S.get(k, 0.0) - T.get(k, 0.0)) ** 2 for k in keys)))


def corep_matrix(twice_ell: int, q: float) -> list[list[PWElement]]:
    """The coefficient matrix u^l as PWElement entries."""
    n = twice_ell + 1
    return [[PWElement.symbol(q, twice_ell, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
