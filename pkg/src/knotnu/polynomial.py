"""Exact Laurent polynomials in one variable with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Sparse Laurent polynomial ``sum c_k x^k`` with integer ``c_k``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their coefficient maps are equal.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if c:
                clean[int(k)] = int(c)
        self._coeffs = clean

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int:
        return min(self._coeffs)

    def max_degree(self) -> int:
        return max(self._coeffs)

    def __getitem__(self, k: int) -> int:
        return self._coeffs.get(k, 0)

    def __iter__(self):
        return iter(sorted(self._coeffs.items()))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({k: c * other for k, c in self._coeffs.items()})
        out: dict[int, int] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({k * n: c ** n if n % 2 else 1})
        out = LaurentPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def exact_divide(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient of an exact division; raises if a remainder is left."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._coeffs)
        top_d = divisor.max_degree()
        lead = divisor[top_d]
        low_d = divisor.min_degree()
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - top_d < min(rem) - low_d:
                break
            c, r = divmod(rem[top], lead)
            if r:
                raise ValueError("division is not exact over the integers")
            k = top - top_d
            quot[k] = c
            for e, dc in divisor._coeffs.items():
                v = rem.get(e + k, 0) - c * dc
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        if rem:
            raise ValueError("division is not exact")
        return LaurentPolynomial(quot)

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute ``x -> x^-1``."""
        return LaurentPolynomial({-k: c for k, c in self._coeffs.items()})

    def scale_exponents(self, factor: int) -> "LaurentPolynomial":
        """Substitute ``x -> x^factor``."""
        return LaurentPolynomial({k * factor: c for k, c in self._coeffs.items()})

    def divide_exponents(self, divisor: int) -> "LaurentPolynomial":
        if any(k % divisor for k in self._coeffs):
            raise ValueError(f"exponents not all divisible by {divisor}")
        return LaurentPolynomial({k // divisor: c for k, c in self._coeffs.items()})

    def shift(self, n: int) -> "LaurentPolynomial":
        return LaurentPolynomial({k + n: c for k, c in self._coeffs.items()})

    def evaluate(self, x):
        return sum(c * x ** k for k, c in self._coeffs.items())

    def is_palindromic(self) -> bool:
        return self == self.invert_variable()

    def normalize_unit(self) -> "LaurentPolynomial":
        """Multiply by ``±x^k`` so the polynomial is centred on degree 0 and
        takes a positive value at ``x = 1`` (positive top coefficient if that
        value is zero)."""
        if self.is_zero():
            return self
        lo, hi = self.min_degree(), self.max_degree()
        if (lo + hi) % 2:
            raise ValueError("cannot centre a polynomial of odd span")
        p = self.shift(-(lo + hi) // 2)
        sign = p.evaluate(1) or p[p.max_degree()]
        return p if sign > 0 else -p

    def __repr__(self):
        return f"LaurentPolynomial({self._coeffs!r})"

    def to_string(self, var: str = "q") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in sorted(self._coeffs.items()):
            if k == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                term = f"{mag}{var}" if k == 1 else f"{mag}{var}^{k}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    __str__ = to_string


def from_terms(terms: Iterable[tuple[int, int]]) -> LaurentPolynomial:
    out: dict[int, int] = {}
    for k, c in terms:
        out[k] = out.get(k, 0) + c
    return LaurentPolynomial(out)
