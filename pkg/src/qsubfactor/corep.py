"""Finite-dimensional corepresentations of SU_q(2) as multisets of spins.

A :class:`CorepDecomp` is the normal form ``m_1 pi_1 + ... + m_n pi_n``.
Every matrix built from one uses the same global basis ordering:
block (spin ascending), then copy index, then weight m ascending.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError, ShapeError
from .qnum import LaurentPoly, check_q, evaluate, poly_sum, qint


@dataclass(frozen=True, order=True)
class Spin:
    """Spin ell stored as ``twice_ell = 2*ell`` so half-integers stay exact."""

    twice_ell: int

    def __post_init__(self):
        if self.twice_ell < 0:
            raise ValueError(f"twice_ell must be >= 0, got {self.twice_ell}")

    @property
    def ell(self) -> Fraction:
        return Fraction(self.twice_ell, 2)

    @property
    def dim(self) -> int:
        return self.twice_ell + 1

    @property
    def is_integer(self) -> bool:
        return self.twice_ell % 2 == 0

    def weights(self) -> list[Fraction]:
        """m = -ell, ..., ell ascending."""
        return [Fraction(k - self.twice_ell, 2) for k in range(0, 2 * self.twice_ell + 1, 2)]

    def __str__(self):
        return str(self.twice_ell // 2) if self.is_integer else f"{self.twice_ell}/2"


@dataclass(frozen=True)
class CorepDecomp:
    """Direct sum of irreducibles: ``blocks`` is ((Spin, multiplicity), ...), spins increasing."""

    blocks: tuple[tuple[Spin, int], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a corepresentation needs at least one block")
        prev = -1
        for spin, mult in self.blocks:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            if spin.twice_ell <= prev:
                raise ValueError("spins must be strictly increasing")
            prev = spin.twice_ell

    @classmethod
    def from_counts(cls, counts: dict[int, int] | Counter) -> "CorepDecomp":
        """Build from a ``{twice_ell: multiplicity}`` map, dropping zeros."""
        items = sorted((t, m) for t, m in counts.items() if m)
        return cls(tuple((Spin(t), m) for t, m in items))

    @classmethod
    def irrep(cls, twice_ell: int) -> "CorepDecomp":
        return cls(((Spin(twice_ell), 1),))

    def counts(self) -> dict[int, int]:
        return {s.twice_ell: m for s, m in self.blocks}

    @property
    def spins(self) -> list[Spin]:
        return [s for s, _ in self.blocks]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.blocks]

    @property
    def dim(self) -> int:
        """Classical dimension sum_j m_j (2 ell_j + 1)."""
        return sum(m * s.dim for s, m in self.blocks)

    @property
    def is_irreducible(self) -> bool:
        return len(self.blocks) == 1 and self.blocks[0][1] == 1

    def basis(self) -> list[tuple[int, int, int]]:
        """Global basis labels (block j, copy c, weight index k), k = 0..2 ell."""
        return [(j, c, k) for j, (s, m) in enumerate(self.blocks) for c in range(m) for k in range(s.dim)]

    def block_slices(self) -> list[slice]:
        """Index range of each block (all copies) in the global basis."""
        out, start = [], 0
        for s, m in self.blocks:
            out.append(slice(start, start + m * s.dim))
            start += m * s.dim
        return out

    def render(self) -> str:
        return " + ".join(str(s) if m == 1 else f"{m}x{s}" for s, m in self.blocks)

    def __str__(self):
        return self.render()

    def to_json(self) -> dict:
        return {"blocks": [{"twice_ell": s.twice_ell, "mult": m} for s, m in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "CorepDecomp":
        counts: Counter = Counter()
        for b in data["blocks"]:
            counts[int(b["twice_ell"])] += int(b["mult"])
        return cls.from_counts(counts)


TRIVIAL = CorepDecomp.irrep(0)

_TOKEN = re.compile(r"(\d+)|(x)|(/)|(\+)|(\S)")


def _tokenize(spec: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(spec):
        off = len(spec[: m.start()].encode())
        if m.group(5) is not None:
            raise ParseError(f"unexpected character {m.group(5)!r}", off)
        kind = "int" if m.group(1) else "x" if m.group(2) else "/" if m.group(3) else "+"
        tokens.append((kind, m.group(0), off))
    return tokens


def parse_rep(spec: str, integer_only: bool = False) -> CorepDecomp:
    """Parse ``REP := TERM ("+" TERM)*``, ``TERM := [INT "x"] SPIN``, ``SPIN := INT | INT "/2"``.

    Duplicate spins are merged. With ``integer_only`` half-integer spins are
    rejected (the SO_q(3) restriction).
    """
    tokens = _tokenize(spec)
    end = len(spec.encode())
    counts: Counter = Counter()
    i = 0

    def peek(k=0):
        return tokens[i + k] if i + k < len(tokens) else ("eof", "", end)

    def expect(kind):
        nonlocal i
        tok = peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        i += 1
        return tok

    while True:
        first = expect("int")
        mult = 1
        if peek()[0] == "x":
            i += 1
            mult = int(first[1])
            if mult == 0:
                raise ParseError("multiplicity must be positive", first[2])
            first = expect("int")
        num = int(first[1])
        if peek()[0] == "/":
            i += 1
            den = expect("int")
            if int(den[1]) != 2:
                raise ParseError(f"spin denominator must be 2, got {den[1]}", den[2])
            if num % 2 == 0:
                raise ParseError(f"spin {num}/2 is not in lowest terms", first[2])
            twice = num
        else:
            twice = 2 * num
        if integer_only and twice % 2:
            raise ParseError(f"half-integer spin {num}/2 not allowed under the integer-spin (SO_q(3)) restriction", first[2])
        counts[twice] += mult
        tok = peek()
        if tok[0] == "eof":
            break
        expect("+")
    return CorepDecomp.from_counts(counts)


def fuse_spins(a: int, b: int) -> range:
    """twice_ell values in twice_a (x) twice_b."""
    return range(abs(a - b), a + b + 1, 2)


def fuse(a: CorepDecomp, b: CorepDecomp) -> CorepDecomp:
    counts: Counter = Counter()
    for sa, ma in a.blocks:
        for sb, mb in b.blocks:
            for t in fuse_spins(sa.twice_ell, sb.twice_ell):
                counts[t] += ma * mb
    return CorepDecomp.from_counts(counts)


def dual(a: CorepDecomp) -> CorepDecomp:
    # every irreducible of SU_q(2) is self-dual
    return a


def dim_q(a: CorepDecomp) -> LaurentPoly:
    return poly_sum(m * qint(s.dim) for s, m in a.blocks)


@dataclass(frozen=True)
class FMatrix:
    """Diagonal of F_pi, one exact monomial per global basis vector."""

    rep: CorepDecomp
    diagonal: tuple[LaurentPoly, ...]

    def trace(self) -> LaurentPoly:
        return poly_sum(self.diagonal)

    def inverse_trace(self) -> LaurentPoly:
        # entries are monomials, so the inverse is the bar
        return poly_sum(d.bar() for d in self.diagonal)

    def exponents(self) -> np.ndarray:
        """Exponent of q in each diagonal entry (always even: q^{2m})."""
        return np.array([next(iter(d))[0] for d in self.diagonal], dtype=int)

    def values(self, q: float, power: float = 1.0) -> np.ndarray:
        q = check_q(q)
        return q ** (power * self.exponents())

    def matrix(self, q: float, power: float = 1.0) -> np.ndarray:
        return np.diag(self.values(q, power))


def f_matrix(a: CorepDecomp) -> FMatrix:
    """F_pi = diag(q^{2m}) on each spin block, m ascending."""
    diag: list[LaurentPoly] = []
    for s, m in a.blocks:
        block = [LaurentPoly.monomial(k - s.twice_ell) for k in range(0, 2 * s.twice_ell + 1, 2)]
        diag.extend(block * m)
    return FMatrix(a, tuple(diag))


def qtrace(a: CorepDecomp, sign: int | str, X, q: float) -> float:
    """tau_q^{(pi,+-)}(X) = Tr(F^{+-1} X) / dim_q(pi) at numeric q."""
    s = _sign(sign)
    X = np.asarray(X)
    n = a.dim
    if X.shape != (n, n):
        raise ShapeError(f"expected a {n}x{n} matrix, got shape {X.shape}")
    w = f_matrix(a).values(q, s)
    return float(np.real(np.dot(w, np.diag(X)))) / evaluate(dim_q(a), q)


def _sign(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-", "−"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


@dataclass(frozen=True)
class EndAlgebra:
    block_sizes: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return sum(m * m for m in self.block_sizes)


def end_algebra(a: CorepDecomp) -> EndAlgebra:
    """End(pi) = direct sum of M_{m_j}(C)."""
    return EndAlgebra(tuple(a.multiplicities))


def central_projections(a: CorepDecomp) -> list[np.ndarray]:
    """Minimal central projections p_j of End(pi) in the global basis."""
    n = a.dim
    out = []
    for sl in a.block_slices():
        p = np.zeros((n, n))
        p[sl, sl] = np.eye(sl.stop - sl.start)
        out.append(p)
    return out


def embed_end(a: CorepDecomp, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix of the End(pi) element sum_j X_j (x) 1_{V_j} in the global basis."""
    if len(mats) != len(a.blocks):
        raise ShapeError(f"need {len(a.blocks)} blocks, got {len(mats)}")
    parts = []
    for (s, m), X in zip(a.blocks, mats):
        X = np.asarray(X)
        if X.shape != (m, m):
            raise ShapeError(f"block for spin {s} must be {m}x{m}, got {X.shape}")
        parts.append(np.kron(X, np.eye(s.dim)))
    n = a.dim
    out = np.zeros((n, n), dtype=np.result_type(*parts))
    for sl, P in zip(a.block_slices(), parts):
        out[sl, sl] = P
    return out


def reps_up_to(max_twice: int) -> Iterable[CorepDecomp]:
    for t in range(max_twice + 1):
        yield CorepDecomp.irrep(t)
