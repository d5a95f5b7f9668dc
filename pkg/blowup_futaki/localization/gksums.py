"""The eigenvalue sums G_k and their primed variants, by brute force and in closed form."""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..algebra.poly import Poly
from ..algebra.rational import Fraction, binomial, format_rational
from ..core.models import CombinatorialReport, CombinatorialRow, GPrimeRow, GTableReport, JordanData
from ..core.mylog import log_outcome


class GPrimes(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gp: Fraction
    gpp: Fraction
    gppp: Fraction


# ---------------------------------------------------------------------------------------
# Binomial moment identity
# ---------------------------------------------------------------------------------------


def combinatorial_identity(l: int, k: int) -> Fraction:
    """sum_j (-1)^j C(l, j) (l - 2j)^k, with 0^0 = 1."""
    if l < 0 or k < 0:
        raise ValueError(f"l and k must be nonnegative, got l={l}, k={k}")
    return Fraction(sum((-1) ** j * binomial(l, j) * (l - 2 * j) ** k for j in range(l + 1)))


def combinatorial_expected(l: int, k: int) -> Optional[Fraction]:
    if k < l or k == l + 1:
        return Fraction(0)
    if k == l:
        return Fraction(2**l * factorial(l))
    return None


def combinatorial_report(l: int, k_max: Optional[int] = None) -> CombinatorialReport:
    rows = []
    for k in range(0, (l + 1 if k_max is None else k_max) + 1):
        value = combinatorial_identity(l, k)
        expected = combinatorial_expected(l, k)
        rows.append(
            CombinatorialRow(
                k=k,
                value=format_rational(value),
                expected=None if expected is None else format_rational(expected),
                passed=expected is None or value == expected,
            )
        )
    return CombinatorialReport(l=l, rows=rows, overall=all(r.passed for r in rows))


# ---------------------------------------------------------------------------------------
# Composition sums
# ---------------------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _other_blocks_series(sizes: Tuple[int, ...], eigs: Tuple[Fraction, ...], j: int) -> Tuple[Fraction, ...]:
    """Coefficients of prod_{l!=j} sum_mu C(n_l+mu-1, mu)/(a_l-a_j)^(n_l+mu) x^mu, truncated at x^(n_j-1).

    The coefficient of x^s is the sum over compositions of s into the other m-1 blocks.
    """
    depth = sizes[j]
    out = [Fraction(0)] * depth
    out[0] = Fraction(1)
    for l, (nl, al) in enumerate(zip(sizes, eigs)):
        if l == j:
            continue
        gap = al - eigs[j]
        factor = [Fraction(binomial(nl + mu - 1, mu)) / gap ** (nl + mu) for mu in range(depth)]
        out = [sum((out[s - t] * factor[t] for t in range(s + 1)), Fraction(0)) for s in range(depth)]
    return tuple(out)


def _block_sum(
    data: JordanData,
    i_range: Iterable[int],
    weight: Callable[[int], int],
    a_exponent: Callable[[int, int], int],
) -> Fraction:
    """sum_j sum_i weight(i) sum_mu (-1)^(n_j+mu_j) / a_j^a_exponent(i, mu_j) * prod_{l!=j} C(n_l+mu_l-1, mu_l)/(a_l-a_j)^(n_l+mu_l)

    with mu running over compositions of n_j - i - 1 into m parts; negative targets give nothing.
    """
    sizes, eigs = tuple(data.sizes), tuple(data.eigenvalues)
    i_values = list(i_range)
    total = Fraction(0)
    for j, (nj, aj) in enumerate(zip(sizes, eigs)):
        others = _other_blocks_series(sizes, eigs, j)
        for i in i_values:
            w = weight(i)
            target = nj - i - 1
            if not w or target < 0:
                continue
            for mj in range(target + 1):
                sign = 1 if (nj + mj) % 2 == 0 else -1
                total += w * sign * others[target - mj] / aj ** a_exponent(i, mj)
    return total


def gk_bruteforce(data: JordanData, k: int) -> Fraction:
    """G_k from its defining composition sum; k = 0 is allowed and feeds the exact eps-expansions."""
    n = data.n
    if not 0 <= k <= n + 1:
        raise ValueError(f"k must lie in 0..{n + 1}, got {k}")
    return _block_sum(
        data,
        range(n + 2 - k),
        lambda i: binomial(n + 1 - k, i),
        lambda i, mj: mj + i + k - n,
    )


def gk_closed_form(data: JordanData, k: int) -> Fraction:
    n = data.n
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must lie in 1..{n + 1}, got {k}")
    if k == n + 1:
        return -1 / data.det
    if k == 1:
        return Fraction((-1) ** n)
    return Fraction(0)


def g_primes(data: JordanData, k: int) -> GPrimes:
    """G'_k, G''_k, G'''_k; k = 0 is allowed for the eps-expansion of the I sums."""
    n = data.n
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    gp = data.trace * _block_sum(
        data,
        range(n - k + 1),
        lambda i: binomial(n - k, i),
        lambda i, mj: mj + i + k + 1 - n,
    )
    gpp = -(n - 1) * _block_sum(
        data,
        range(n - k + 1),
        lambda i: binomial(n - k, i),
        lambda i, mj: mj + i + k - n,
    )
    gppp = -(n - 1) * _block_sum(
        data,
        range(1, n - k + 2),
        lambda i: binomial(n - k, i - 1),
        lambda i, mj: mj + i + k - n,
    )
    return GPrimes(gp=gp, gpp=gpp, gppp=gppp)


def gtable_report(data: JordanData) -> GTableReport:
    n = data.n
    values, closed, agree = {}, {}, {}
    brute = {k: gk_bruteforce(data, k) for k in range(1, n + 2)}
    for k in range(1, n + 2):
        c = gk_closed_form(data, k)
        values[str(k)] = format_rational(brute[k])
        closed[str(k)] = format_rational(c)
        agree[str(k)] = brute[k] == c

    primes: List[GPrimeRow] = []
    for k in range(1, n + 1):
        g = g_primes(data, k)
        primes.append(
            GPrimeRow(
                k=k,
                gp=format_rational(g.gp),
                gpp=format_rational(g.gpp),
                gppp=format_rational(g.gppp),
                gp_is_trace_times_next=g.gp == data.trace * brute[k + 1],
                gpp_plus_gppp_is_scaled_gk=g.gpp + g.gppp == -(n - 1) * brute[k],
            )
        )
    overall = all(agree.values()) and all(r.gp_is_trace_times_next and r.gpp_plus_gppp_is_scaled_gk for r in primes)
    bad = [k for k, ok in agree.items() if not ok]
    log_outcome("gk", data.label(), overall, f"mismatch at k={bad}")
    return GTableReport(
        blocks=data.to_json(), values=values, closed_form=closed, agree=agree, primes=primes, overall=overall
    )


# ---------------------------------------------------------------------------------------
# Exceptional sums rebuilt from G_k
# ---------------------------------------------------------------------------------------


def sum_j_via_gk(data: JordanData) -> Poly:
    """sum_k (-1)^(n-k) C(n+1, k) theta^k eps^(n+1-k) G_k, exact in eps."""
    n = data.n
    U = data.universe
    out = U.zero
    for k in range(n + 2):
        g = gk_bruteforce(data, k)
        if g:
            out += U.const(Fraction(-1) ** (n - k) * binomial(n + 1, k) * g) * U.theta**k * U.eps ** (n + 1 - k)
    return out


def sum_i_via_gk(data: JordanData) -> Poly:
    """sum_k (-1)^(n-k+1) C(n, k) theta^k eps^(n-k) (G'_k + G''_k + G'''_k), exact in eps."""
    n = data.n
    U = data.universe
    out = U.zero
    for k in range(n + 1):
        g = g_primes(data, k)
        total = g.gp + g.gpp + g.gppp
        if total:
            out += U.const((-1) ** (n - k + 1) * binomial(n, k) * total) * U.theta**k * U.eps ** (n - k)
    return out
