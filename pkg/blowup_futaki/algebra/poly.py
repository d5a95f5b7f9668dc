"""Sparse multivariate polynomials over the rationals in a fixed symbol universe.

A universe for dimension n carries the symbols u1..un, eps, theta, mu, z and is backed by
``sympy.polys.rings.ring`` over ``QQ``: a polynomial is a ``PolyElement`` (a mapping from
exponent tuples to nonzero coefficients), so sums, products and derivatives are exact and
the term order is canonical (lex over the generator order above).
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from .rational import Fraction, RationalLike, format_rational, from_qq, to_qq

Poly = PolyElement

EXTRA_SYMBOLS = ("eps", "theta", "mu", "z")


class SymbolError(KeyError):
    pass


class PolyOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    POW = "pow"


class SymbolUniverse:
    """The polynomial ring Q[u1..un, eps, theta, mu, z] for one run."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"universe needs at least one u-symbol, got n={n}")
        self.n = n
        self.names: Tuple[str, ...] = tuple(f"u{i}" for i in range(1, n + 1)) + EXTRA_SYMBOLS
        self.ring, *gens = ring(",".join(self.names), QQ)
        self._gens: Dict[str, PolyElement] = dict(zip(self.names, gens))

    def __repr__(self) -> str:
        return f"SymbolUniverse(n={self.n})"

    # --- generators -------------------------------------------------------------------

    def u(self, i: int) -> PolyElement:
        """u_i with the 1-based index used throughout the formulas."""
        if not 1 <= i <= self.n:
            raise SymbolError(f"u{i} is not in the universe of dimension {self.n}")
        return self._gens[f"u{i}"]

    @property
    def us(self) -> List[PolyElement]:
        return [self.u(i) for i in range(1, self.n + 1)]

    @property
    def eps(self) -> PolyElement:
        return self._gens["eps"]

    @property
    def theta(self) -> PolyElement:
        return self._gens["theta"]

    @property
    def mu(self) -> PolyElement:
        return self._gens["mu"]

    @property
    def z(self) -> PolyElement:
        return self._gens["z"]

    def symbol(self, name: str) -> PolyElement:
        try:
            return self._gens[name]
        except KeyError:
            raise SymbolError(f"{name!r} is not in {self.names}") from None

    def index(self, symbol: PolyElement | str) -> int:
        if isinstance(symbol, str):
            symbol = self.symbol(symbol)
        return self.ring.gens.index(symbol)

    # --- constructors -----------------------------------------------------------------

    def const(self, value: RationalLike) -> PolyElement:
        return self.ring.ground_new(to_qq(value))

    @property
    def zero(self) -> PolyElement:
        return self.ring.zero

    @property
    def one(self) -> PolyElement:
        return self.ring.one


@lru_cache(maxsize=None)
def universe(n: int) -> SymbolUniverse:
    return SymbolUniverse(n)


def universe_of(p: PolyElement) -> SymbolUniverse:
    n = len(p.ring.gens) - len(EXTRA_SYMBOLS)
    return universe(n)


# ---------------------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------------------


def poly_arith(a: PolyElement, b: PolyElement | int, op: PolyOp) -> PolyElement:
    """Exact ring arithmetic; for POW the second argument is the integer exponent."""
    if op is PolyOp.ADD:
        return a + b
    if op is PolyOp.SUB:
        return a - b
    if op is PolyOp.MUL:
        return a * b
    if op is PolyOp.POW:
        if not isinstance(b, int) or b < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {b!r}")
        return a**b
    raise ValueError(f"unsupported operation {op!r}")


def poly_diff(p: PolyElement, symbol: PolyElement, order: int = 1) -> PolyElement:
    if order < 0:
        raise ValueError(f"derivative order must be nonnegative, got {order}")
    if symbol not in p.ring.gens:
        raise SymbolError(f"{symbol} is not a generator of {p.ring}")
    for _ in range(order):
        if not p:
            break
        p = p.diff(symbol)
    return p


def eval_at_zero(p: PolyElement, symbols: Iterable[PolyElement]) -> PolyElement:
    for s in symbols:
        if s not in p.ring.gens:
            raise SymbolError(f"{s} is not a generator of {p.ring}")
        if p:
            p = p.subs(s, 0)
    return p


def degree_in(p: PolyElement, symbol: PolyElement) -> int:
    """Degree in one symbol; -1 for the zero polynomial."""
    if not p:
        return -1
    return p.degree(symbol)


def coefficient_in(p: PolyElement, symbol: PolyElement, power: int) -> PolyElement:
    """The coefficient of symbol**power, as a polynomial free of symbol."""
    idx = p.ring.gens.index(symbol)
    picked = {}
    for monom, coeff in p.terms():
        if monom[idx] == power:
            picked[monom[:idx] + (0,) + monom[idx + 1 :]] = coeff
    return p.ring.from_dict(picked)


def monomial_coefficient(p: PolyElement, exponents: Dict[PolyElement, int]) -> PolyElement:
    """Coefficient of the given monomial in the listed symbols, polynomial in the rest."""
    for symbol, power in exponents.items():
        p = coefficient_in(p, symbol, power)
    return p


def depends_only_on(p: PolyElement, allowed: Iterable[PolyElement]) -> bool:
    allowed_idx = {p.ring.gens.index(s) for s in allowed}
    return all(e == 0 or i in allowed_idx for monom in p.monoms() for i, e in enumerate(monom))


def divisible_by_power(p: PolyElement, symbol: PolyElement, power: int) -> bool:
    idx = p.ring.gens.index(symbol)
    return all(monom[idx] >= power for monom in p.monoms())


def constant_value(p: PolyElement) -> Fraction:
    """The rational value of a constant polynomial."""
    if p.is_ground:
        return from_qq(p.LC) if p else Fraction(0)
    raise ValueError(f"{p} is not constant")


# ---------------------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------------------


def monomial_key(names: Sequence[str], monom: Tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def poly_to_json(p: PolyElement) -> Dict[str, str]:
    names = [str(g) for g in p.ring.symbols]
    return {monomial_key(names, monom): format_rational(from_qq(coeff)) for monom, coeff in p.terms()}


def poly_to_text(p: PolyElement) -> str:
    if not p:
        return "0"
    names = [str(g) for g in p.ring.symbols]
    out = []
    for monom, coeff in p.terms():
        c = from_qq(coeff)
        key = monomial_key(names, monom)
        if key == "1":
            term = format_rational(abs(c))
        elif abs(c) == 1:
            term = key
        else:
            term = f"{format_rational(abs(c))}*{key}"
        sign = "-" if c < 0 else "+"
        out.append((sign, term))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, term in out[1:]:
        text += f" {sign} {term}"
    return text
