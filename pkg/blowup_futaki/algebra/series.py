"""Polynomials truncated in the eps-degree: the carrier of every "+ O(eps^N)" statement."""

from __future__ import annotations

from typing import List

from sympy.polys.ring_series import rs_mul, rs_trunc

from .poly import Poly, coefficient_in, degree_in, universe_of
from .rational import RationalLike, to_qq


class EpsExpansion:
    """body + O(eps^(eps_cap + 1)); coefficients are polynomials in the remaining symbols."""

    __slots__ = ("body", "eps_cap")

    def __init__(self, body: Poly, eps_cap: int):
        if eps_cap < 0:
            raise ValueError(f"eps_cap must be nonnegative, got {eps_cap}")
        eps = universe_of(body).eps
        self.body: Poly = rs_trunc(body, eps, eps_cap + 1) if body else body
        self.eps_cap = eps_cap

    @property
    def eps(self) -> Poly:
        return universe_of(self.body).eps

    def _coerce(self, other) -> "EpsExpansion":
        if isinstance(other, EpsExpansion):
            return other
        if isinstance(other, Poly):
            return EpsExpansion(other, self.eps_cap)
        return EpsExpansion(self.body.ring.ground_new(to_qq(other)), self.eps_cap)

    def __add__(self, other) -> "EpsExpansion":
        other = self._coerce(other)
        return EpsExpansion(self.body + other.body, min(self.eps_cap, other.eps_cap))

    __radd__ = __add__

    def __neg__(self) -> "EpsExpansion":
        return EpsExpansion(-self.body, self.eps_cap)

    def __sub__(self, other) -> "EpsExpansion":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "EpsExpansion":
        return self._coerce(other) - self

    def __mul__(self, other) -> "EpsExpansion":
        other = self._coerce(other)
        cap = min(self.eps_cap, other.eps_cap)
        if not self.body or not other.body:
            return EpsExpansion(self.body.ring.zero, cap)
        return EpsExpansion(rs_mul(self.body, other.body, self.eps, cap + 1), cap)

    __rmul__ = __mul__

    def scale(self, factor: RationalLike) -> "EpsExpansion":
        return EpsExpansion(self.body * to_qq(factor), self.eps_cap)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpsExpansion):
            return NotImplemented
        return self.eps_cap == other.eps_cap and self.body == other.body

    def __hash__(self):
        return hash((self.eps_cap, tuple(self.body.terms())))

    def __repr__(self) -> str:
        return f"EpsExpansion({self.body} + O(eps^{self.eps_cap + 1}))"

    def coefficient(self, power: int) -> Poly:
        """Coefficient of eps**power (a polynomial without eps)."""
        if power > self.eps_cap:
            raise ValueError(f"eps^{power} is beyond the truncation order {self.eps_cap}")
        return coefficient_in(self.body, self.eps, power)

    def coefficients(self) -> List[Poly]:
        return [self.coefficient(j) for j in range(self.eps_cap + 1)]

    def leading_order(self) -> int | None:
        """Lowest eps power with a nonzero coefficient, None when the body is zero."""
        for j in range(self.eps_cap + 1):
            if self.coefficient(j):
                return j
        return None

    def is_big_o(self, power: int) -> bool:
        """True when every coefficient below eps**power vanishes."""
        return all(not self.coefficient(j) for j in range(min(power, self.eps_cap + 1)))

    @property
    def eps_degree(self) -> int:
        return degree_in(self.body, self.eps)
