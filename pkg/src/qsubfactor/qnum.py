"""Exact Laurent polynomials in q with rational coefficients.

Quantum integers and quantum dimensions live here as exact objects;
floats only appear in :func:`evaluate`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError


class LaurentPoly:
    """Immutable finite sum ``sum_k c_k q^k`` with ``c_k`` rational.

    Zero coefficients are never stored, so two polynomials are equal iff
    their coefficient maps are equal.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        for k, c in (coeffs or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[int(k)] = c
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "LaurentPoly":
        """Substitute q -> 1/q."""
        return LaurentPoly({-k: c for k, c in self._coeffs.items()})

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        """Render with ascending exponents, e.g. ``q^-2 + 1 + q^2``."""
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for k, c in self._coeffs.items():
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = str(a)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a}{mono}"
                else:
                    body = f"({a}){mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def to_json(self) -> dict[str, str]:
        return {str(k): str(c) for k, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(k): Fraction(v) for k, v in data.items()})


def qint(n: int) -> LaurentPoly:
    """Quantum integer [n]_q = q^-(n-1) + q^-(n-3) + ... + q^(n-1)."""
    if n < 1:
        raise DomainError(f"quantum integer needs n >= 1, got {n}")
    return LaurentPoly({k: 1 for k in range(-(n - 1), n, 2)})


def check_q(q: float) -> float:
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q!r}")
    return q


def evaluate(p: LaurentPoly, q: float) -> float:
    """Float value of ``p`` at ``q``, summed in ascending exponent order."""
    q = check_q(q)
    total = 0.0
    for k, c in p:
        total += float(c) * q**k
    return total


def bar_symmetric(p: LaurentPoly) -> bool:
    """True iff p is invariant under q -> 1/q."""
    return p == p.bar()


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly()
    for p in polys:
        out = out + p
    return out
