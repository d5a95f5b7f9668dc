"""Univariate rational functions in z with exact Laurent residues.

Residues at finite poles come from shifted series division: with z = c + t the denominator
splits as t^m * D(t), D(0) != 0, and the residue is the t^(m-1) coefficient of N(t)/D(t)
computed with ``rs_series_inversion``. The residue at infinity uses z = 1/w and the
differential dz = -dw/w^2, never the sum of the finite residues.
"""

from __future__ import annotations

from typing import Dict, List, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_mul, rs_series_inversion
from sympy.polys.rings import ring

from .poly import Poly
from .rational import Fraction, RationalLike, from_qq, to_qq

Z_RING, Z = ring("z", QQ)


class Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "infinity"

    def __str__(self) -> str:
        return "infinity"


INFINITY = Infinity()
Point = Union[Fraction, Infinity]


class NotAPoleError(ValueError):
    pass


class IrrationalPoleError(ValueError):
    pass


def _lowest_degree(p: Poly) -> int:
    return min(m[0] for m in p.monoms())


def _reverse(p: Poly, degree: int) -> Poly:
    """w^degree * p(1/w)."""
    return Z_RING.from_dict({(degree - m[0],): c for m, c in p.terms()})


class RationalFunction1V:
    """numerator / denominator in Q[z], reduced by gcd with a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Poly, denominator: Poly | None = None):
        if denominator is None:
            denominator = Z_RING.one
        if numerator.ring != Z_RING or denominator.ring != Z_RING:
            raise ValueError("rational functions are built from polynomials in z only")
        if not denominator:
            raise ZeroDivisionError("denominator is identically zero")
        if not numerator:
            self.numerator, self.denominator = Z_RING.zero, Z_RING.one
            return
        num, den = numerator.cancel(denominator)
        lc = den.LC
        self.numerator = num.quo_ground(lc)
        self.denominator = den.monic()

    # --- constructors -----------------------------------------------------------------

    @classmethod
    def constant(cls, value: RationalLike) -> "RationalFunction1V":
        return cls(Z_RING.ground_new(to_qq(value)))

    @classmethod
    def monomial(cls, coeff: RationalLike, power: int) -> "RationalFunction1V":
        """coeff * z**power, power of either sign."""
        c = Z_RING.ground_new(to_qq(coeff))
        if power >= 0:
            return cls(c * Z**power)
        return cls(c, Z ** (-power))

    @classmethod
    def linear_power(cls, root: RationalLike, power: int, *, reversed_sign: bool = False) -> "RationalFunction1V":
        """(z - root)**power, or (root - z)**power when reversed_sign; power of either sign."""
        base = Z - to_qq(root)
        if reversed_sign:
            base = -base
        if power >= 0:
            return cls(base**power)
        return cls(Z_RING.one, base ** (-power))

    # --- arithmetic -------------------------------------------------------------------

    def __add__(self, other: "RationalFunction1V") -> "RationalFunction1V":
        other = _coerce(other)
        return RationalFunction1V(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction1V":
        return RationalFunction1V(-self.numerator, self.denominator)

    def __sub__(self, other: "RationalFunction1V") -> "RationalFunction1V":
        return self + (-_coerce(other))

    def __mul__(self, other) -> "RationalFunction1V":
        other = _coerce(other)
        return RationalFunction1V(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction1V):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((tuple(self.numerator.terms()), tuple(self.denominator.terms())))

    def __repr__(self) -> str:
        return f"({self.numerator})/({self.denominator})"

    def is_zero(self) -> bool:
        return not self.numerator

    def degree_gap(self) -> int:
        """deg(numerator) - deg(denominator); only meaningful for a nonzero function."""
        return self.numerator.degree() - self.denominator.degree()

    # --- poles ------------------------------------------------------------------------

    def poles(self) -> Dict[Fraction, int]:
        """Finite poles with multiplicities, from the exact factorisation of the denominator."""
        out: Dict[Fraction, int] = {}
        if self.denominator.is_ground:
            return out
        _, factors = self.denominator.factor_list()
        for factor, multiplicity in factors:
            if factor.degree() != 1:
                raise IrrationalPoleError(f"denominator factor {factor} has no rational root")
            coeffs = dict(factor.terms())
            c1 = coeffs[(1,)]
            c0 = coeffs.get((0,), QQ.zero)
            out[from_qq(-c0 / c1)] = multiplicity
        return dict(sorted(out.items()))

    def has_pole_at_infinity(self) -> bool:
        """Whether the differential f dz has a pole at infinity."""
        return not self.is_zero() and self.degree_gap() >= -1

    def at_infinity_chart(self) -> "RationalFunction1V":
        """g(w) with f(z) dz = g(w) dw under z = 1/w, i.e. g(w) = -f(1/w)/w^2."""
        if self.is_zero():
            return self
        dn, dd = self.numerator.degree(), self.denominator.degree()
        num = -_reverse(self.numerator, dn)
        den = _reverse(self.denominator, dd)
        shift = dd - dn - 2
        if shift >= 0:
            return RationalFunction1V(num * Z**shift, den)
        return RationalFunction1V(num, den * Z ** (-shift))


def _coerce(value) -> RationalFunction1V:
    if isinstance(value, RationalFunction1V):
        return value
    return RationalFunction1V.constant(value)


# ---------------------------------------------------------------------------------------
# Residues
# ---------------------------------------------------------------------------------------


def _finite_residue(f: RationalFunction1V, pole: Fraction) -> Fraction:
    c = to_qq(pole)
    num = f.numerator.compose(Z, Z + c)
    den = f.denominator.compose(Z, Z + c)
    order = _lowest_degree(den)
    if order == 0:
        raise NotAPoleError(f"{pole} is not a pole of {f}")
    if not num:
        return Fraction(0)
    unit = den.exquo(Z**order)
    series = rs_mul(num, rs_series_inversion(unit, Z, order), Z, order)
    coeff = dict(series.terms()).get((order - 1,), QQ.zero)
    return from_qq(coeff)


def laurent_residue(f: RationalFunction1V, pole: Fraction | Infinity) -> Fraction:
    """Coefficient of (z - pole)^-1 in the local Laurent expansion of f dz."""
    if isinstance(pole, Infinity):
        g = f.at_infinity_chart()
        if g.is_zero() or g.denominator.is_ground:
            return Fraction(0)
        if _lowest_degree(g.denominator) == 0:
            return Fraction(0)
        return _finite_residue(g, Fraction(0))
    return _finite_residue(f, Fraction(pole))


def all_residues(f: RationalFunction1V) -> List[Tuple[Point, Fraction]]:
    """Residues at every finite pole (in increasing order) followed by infinity."""
    out: List[Tuple[Point, Fraction]] = [(p, laurent_residue(f, p)) for p in f.poles()]
    out.append((INFINITY, laurent_residue(f, INFINITY)))
    return out


def residue_sum(f: RationalFunction1V) -> Fraction:
    return sum((r for _, r in all_residues(f)), Fraction(0))


def format_point(point: Point) -> str:
    return "infinity" if isinstance(point, Infinity) else str(point)
