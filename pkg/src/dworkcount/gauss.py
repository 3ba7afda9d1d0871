"""Gauss sums in Gross-Koblitz form and their collapse to p-adic values.

Characters are powers of wbar (the inverse Teichmuller character); a Gauss sum
is carried as (pi_exponent, unit) with pi^(p-1) = -p.  pi itself is never
materialized: every formula in scope combines Gauss sums so that pi-exponents
cancel to multiples of p-1, and gk_product fails loudly if one does not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .padic import PadicError, PadicUnit, ValuedPadic, teichmuller_table
from .pgamma import frac_gamma_table


class PiBalanceError(PadicError):
    """A Gauss-sum product left a pi-exponent not divisible by p-1.

    This signals a bug in a formula's balancing, never a user error.
    """


@dataclass(frozen=True)
class GaussSumGK:
    """g(wbar^j) = pi^pi_exp * unit, where unit = -Gamma_p(<j/(p-1)>)."""

    pi_exp: int
    unit: PadicUnit

    @property
    def p(self) -> int:
        return self.unit.p


def gauss_gk(j: int, p: int, digits: int) -> GaussSumGK:
    """Gross-Koblitz pair for g(wbar^j); (p-1)-periodic in j."""
    r = j % (p - 1)
    mod = p ** digits
    residue = (mod - frac_gamma_table(p, digits)[r]) % mod
    return GaussSumGK(r, PadicUnit(residue, p, digits))


def gk_product(factors, p: int, digits: int) -> ValuedPadic:
    """Collapse a product of Gauss sums (with exponents +-1) to a ValuedPadic.

    factors: iterable of (GaussSumGK, exponent).  The total pi-exponent must be
    a multiple of p-1; the (-p)^k it encodes becomes the valuation and sign.
    """
    mod = p ** digits
    total_pi = 0
    unit = 1
    for g, e in factors:
        total_pi += g.pi_exp * e
        unit = unit * (g.unit.residue if e == 1 else pow(g.unit.residue, -1, mod)) % mod
    if total_pi % (p - 1):
        raise PiBalanceError(f"pi-exponent {total_pi} not divisible by {p - 1}")
    val = total_pi // (p - 1)
    if val % 2:
        unit = (mod - unit) % mod  # (-p)^val contributes the sign
    return ValuedPadic(p, val, PadicUnit(unit, p, digits))


def jacobi_sum(a: int, b: int, p: int, digits: int) -> int:
    """J(wbar^a, wbar^b) = sum over x of wbar^a(x) wbar^b(1-x), mod p^digits.

    Direct character-sum evaluation through the Teichmuller table; serves as
    the independent oracle for gk_product.
    """
    mod = p ** digits
    teich = teichmuller_table(p, digits)
    ea, eb = (-a) % (p - 1), (-b) % (p - 1)
    acc = 0
    for x in range(2, p):  # x=0 kills chi(x), x=1 kills psi(1-x)
        acc += pow(teich[x], ea, mod) * pow(teich[(1 - x) % p], eb, mod)
    return acc % mod
