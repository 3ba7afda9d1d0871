"""Dwork-hypersurface combinatorics (the residue-vector set W, its diagonal-shift
classes, the derived parameter lists) and the four point-count formulas:
the main p-adic hypergeometric count, its d = 1 and p == 1 (mod n) specializations,
and the Gauss-sum count (which also covers lambda = 0).

The main count evaluates each class's mGm through a reduced kernel in which the
h/n-argument gamma family is rewritten, via the gamma multiplication lemma, as
denominator-(p-1) data:

    prod_{h not== 0 (n/d)} Gamma(<h/n - j/(p-1)>) / Gamma(h/n)
        = Gamma(<-nj/(p-1)>) w(n^{-nj}) prod_{0<k<d} Gamma(k/d)
          / prod_{0<=k<d} Gamma(<k/d - j/(p-1)>),

so every gamma lookup hits the seeded table and a count costs O(p) per class
instead of a p^digits lift sweep.  The (-p)-exponents are still the exact
floors of the literal definition, and tests pin the kernel against the literal
evaluator on instances small enough to sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .gauss import gauss_gk, gk_product
from .hyperfun import FParams, eval_F
from .padic import (PadicUnit, ValuedPadic, is_odd_prime, reconstruct_integer,
                    teichmuller_table)
from .pgamma import frac_gamma_table


class InstanceError(ValueError):
    """The (p, n, lambda) triple violates a precondition of the chosen method."""


@dataclass(frozen=True)
class DworkInstance:
    """A Dwork hypersurface instance: x_1^n + ... + x_n^n - n*lam*x_1...x_n over F_p."""

    p: int
    n: int
    lam: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise InstanceError(f"p={self.p} is not an odd prime")
        if self.n < 2:
            raise InstanceError("n must be at least 2")
        if self.n % self.p == 0:
            raise InstanceError(f"p={self.p} divides n={self.n}: "
                                "the problem reduces to the lambda=0 diagonal case")
        object.__setattr__(self, "lam", self.lam % self.p)

    @property
    def d(self) -> int:
        return gcd(self.p - 1, self.n)

    @property
    def t(self) -> int:
        return (self.p - 1) // self.d

    @property
    def projective_total(self) -> int:
        return (self.p ** self.n - 1) // (self.p - 1)


@dataclass(frozen=True)
class ClassRep:
    """A diagonal-shift equivalence class, named by its canonical representative."""

    wstar: tuple[int, ...]
    orbit_size: int


def enumerate_W(n: int, d: int) -> list[tuple[int, ...]]:
    """All d^(n-1) vectors with entries in [0, d) summing to 0 mod d, lex order."""
    out = []
    for head in product(range(d), repeat=n - 1):
        out.append(head + ((-sum(head)) % d,))
    return out


def orbit(w: tuple[int, ...], d: int) -> list[tuple[int, ...]]:
    """The d diagonal shifts of w (all distinct: the shift stabilizer is trivial)."""
    return [tuple((wi + c) % d for wi in w) for c in range(d)]


def canonical_classes(n: int, d: int) -> list[ClassRep]:
    """One representative per class: the lex-smallest zero-containing member."""
    seen = set()
    reps = []
    for w in enumerate_W(n, d):
        if w in seen:
            continue
        orb = orbit(w, d)
        seen.update(orb)
        rep = min(v for v in orb if 0 in v)
        reps.append(ClassRep(rep, d))
    return sorted(reps, key=lambda c: c.wstar)


@dataclass(frozen=True)
class ParamData:
    """Derived combinatorics of a zero-containing class representative."""

    w: tuple[int, ...]
    d: int
    n_k: tuple[int, ...]
    S_w: frozenset[int]
    S_wc: frozenset[int]
    A_w: tuple[Fraction, ...]
    B_w: tuple[Fraction, ...]
    s: int
    prefactor_exponent: int

    def gamma_prefactor(self, p: int, digits: int) -> PadicUnit:
        """prod_i Gamma_p(w_i / d) mod p^digits."""
        table = frac_gamma_table(p, digits)
        t = (p - 1) // self.d
        res = 1
        mod = p ** digits
        for wi in self.w:
            res = res * table[wi * t] % mod
        return PadicUnit(res, p, digits)


def derive_params(w: tuple[int, ...], n: int, d: int) -> ParamData:
    """A_w, B_w, s and friends for a zero-containing w (any such member works;
    the class summand is representative-independent and tests assert it)."""
    if 0 not in w:
        raise ValueError("the main count needs a representative with a zero entry")
    if len(w) != n or any(not 0 <= wi < d for wi in w) or sum(w) % d:
        raise ValueError("w is not a member of W(n, d)")
    n_k = tuple(sum(1 for wi in w if wi == k) for k in range(d))
    S_w = frozenset(k for k in range(d) if n_k[k] == 0)
    S_wc = frozenset(range(d)) - S_w
    A_w = sorted(Fraction(d - k, d) for k in S_w)
    A_w += sorted(Fraction(h, n) for h in range(n) if h % (n // d))
    B_w = []
    for k in sorted(S_wc):
        B_w.extend([Fraction(d - k, d)] * (n_k[k] - 1))
    s = n - len(S_wc)
    assert len(A_w) == len(B_w) == s
    return ParamData(w, d, n_k, S_w, S_wc, tuple(sorted(A_w)), tuple(sorted(B_w)),
                     s, sum(w) // d)


# -- precision policy --------------------------------------------------------

def k_target(p: int, n: int) -> int:
    """Smallest K with p^K > 2*(p^n - 1)/(p - 1): enough to pin the point count."""
    bound = 2 * ((p ** n - 1) // (p - 1))
    k, pk = 1, p
    while pk <= bound:
        pk *= p
        k += 1
    return k


def k_working(p: int, n: int, kt: int | None = None) -> int:
    """Digits carried internally: target + widest parameter count (n-1) + 2 guards."""
    return (kt if kt is not None else k_target(p, n)) + (n - 1) + 2


# -- the reduced mGm kernel ---------------------------------------------------

def class_g_coefficients(pd: ParamData, p: int, n: int, digits: int) -> list[ValuedPadic]:
    """Per-j coefficients c_j with  G[A_w; B_w | x] = -1/(p-1) * sum_j c_j wbar^j(x).

    Each c_j = (-1)^{js} (-p)^{E_j} * (gamma quotients), with the h/n family
    reduced to denominator-(p-1) lookups; E_j comes from the exact floors of
    the literal definition.
    """
    d, t = pd.d, (p - 1) // pd.d
    mod = p ** digits
    table = frac_gamma_table(p, digits)
    teich = teichmuller_table(p, digits)
    S = sorted(pd.S_w)
    Sc = sorted(pd.S_wc)
    cd_prod = 1
    for k in range(1, d):
        cd_prod = cd_prod * table[k * t] % mod
    denom = 1
    for k in S:
        denom = denom * table[(d - k) * t] % mod
    for k in Sc:
        denom = denom * pow(table[k * t], pd.n_k[k] - 1, mod) % mod
    inv_denom = pow(denom, -1, mod)
    teich_n = teich[n % p]
    # exact floor bookkeeping: a < j/(p-1) and <-b> >= 1 - j/(p-1), cross-multiplied
    a_list = [(q.numerator, q.denominator) for q in pd.A_w]
    b_thresholds = []  # <-b> = k/d for the k in S_wc repeated n_k - 1 times (k=0 never fires)
    for k in Sc:
        if k > 0:
            b_thresholds.extend([k * t] * (pd.n_k[k] - 1))
    coeffs = []
    for j in range(p - 1):
        unit = inv_denom * cd_prod % mod
        for k in S:
            unit = unit * table[((d - k) * t - j) % (p - 1)] % mod
        for k in Sc:
            e = pd.n_k[k] - 1
            if e:
                unit = unit * pow(table[(k * t + j) % (p - 1)], e, mod) % mod
        r = (-n * j) % (p - 1)
        unit = unit * table[r] % mod * pow(teich_n, r, mod) % mod
        hden = 1
        for k in range(d):
            hden = hden * table[(k * t - j) % (p - 1)] % mod
        unit = unit * pow(hden, -1, mod) % mod
        exponent = sum(1 for (u, v) in a_list if u * (p - 1) < j * v) \
            - sum(1 for thr in b_thresholds if j >= p - 1 - thr)
        if (j * pd.s + exponent) % 2:
            unit = (mod - unit) % mod
        coeffs.append(ValuedPadic(p, exponent, PadicUnit(unit, p, digits)))
    return coeffs


def class_g_value(pd: ParamData, x: int, p: int, n: int, digits: int) -> ValuedPadic:
    """G[A_w; B_w | x] via the reduced kernel (equals the literal evaluator)."""
    x %= p
    if x == 0:
        return ValuedPadic.zero(p)
    mod = p ** digits
    chi, chi_step = 1, pow(teichmuller_table(p, digits)[x], p - 2, mod)
    total = ValuedPadic.zero(p)
    for c in class_g_coefficients(pd, p, n, digits):
        total = total + c * ValuedPadic(p, 0, PadicUnit(chi, p, digits))
        chi = chi * chi_step % mod
    return total * ValuedPadic.from_fraction(Fraction(-1, p - 1), p, digits)


# -- count engines ------------------------------------------------------------

class _MainEngine:
    """Main-count evaluation for fixed (p, n): per-class coefficients are
    lambda-free, so a grid over lambda reuses all gamma work."""

    def __init__(self, p: int, n: int, kt: int):
        inst = DworkInstance(p, n, 1)
        self.p, self.n, self.d = p, n, inst.d
        self.digits = k_working(p, n, kt)
        self.mod = p ** self.digits
        self.total = inst.projective_total
        self.base = (p ** (n - 1) - 1) // (p - 1)
        self.classes = []
        for rep in canonical_classes(n, inst.d):
            pd = derive_params(rep.wstar, n, inst.d)
            pref = ValuedPadic(p, pd.prefactor_exponent,
                               pd.gamma_prefactor(p, self.digits))
            if pd.prefactor_exponent % 2:  # (-p)^e carries a sign
                pref = -pref
            self.classes.append((pd, pref, class_g_coefficients(pd, p, n, self.digits)))

    def value(self, lam: int) -> ValuedPadic:
        p, n = self.p, self.n
        lam %= p
        if lam == 0:
            raise InstanceError("lambda = 0: use the Gauss-sum count")
        x = pow(lam, n, p)
        scale = ValuedPadic.from_fraction(Fraction(-1, p - 1), p, self.digits)
        teich_x = teichmuller_table(p, self.digits)[x]
        chi_step = pow(teich_x, p - 2, self.mod)
        acc = ValuedPadic.from_int(self.base, p, self.digits)
        sign = 1 if n % 2 == 0 else -1
        for pd, pref, coeffs in self.classes:
            chi = 1
            g_sum = ValuedPadic.zero(p)
            for c in coeffs:
                g_sum = g_sum + c * ValuedPadic(p, 0, PadicUnit(chi, p, self.digits))
                chi = chi * chi_step % self.mod
            summand = pref * g_sum * scale
            acc = acc + (summand if sign > 0 else -summand)
        return acc

    def count(self, lam: int) -> int:
        return reconstruct_integer(self.value(lam), self.total)


class _KoblitzEngine:
    """Gauss-sum count for fixed (p, n); valid for every lambda including 0."""

    def __init__(self, p: int, n: int, kt: int):
        inst = DworkInstance(p, n, 1)
        self.p, self.n, self.d, self.t = p, n, inst.d, inst.t
        self.digits = k_working(p, n, kt)
        self.mod = p ** self.digits
        self.total = inst.projective_total
        W = enumerate_W(n, inst.d)
        const = ValuedPadic.from_int((p ** (n - 1) - 1) // (p - 1), p, self.digits)
        shift = ValuedPadic(p, -1, PadicUnit(1, p, self.digits))
        for w in W:
            if all(wi == 0 for wi in w):
                continue  # handled by the constant above
            if any(wi == 0 for wi in w):
                continue  # N_p(0, w) = 0 when some but not all entries vanish
            prod = gk_product([(gauss_gk(wi * self.t, p, self.digits), 1) for wi in w],
                              p, self.digits)
            if prod.valuation < 1:
                raise AssertionError("all-nonzero Gauss product must have valuation >= 1")
            const = const + prod * shift
        self.const = const
        self.char_terms = []  # (exponent of T^{nj}, collapsed coefficient)
        for w in W:
            for j in range(self.t):
                factors = [(gauss_gk(wi * self.t + j, p, self.digits), 1) for wi in w]
                factors.append((gauss_gk(n * j, p, self.digits), -1))
                self.char_terms.append(((n * j) % (p - 1),
                                        gk_product(factors, p, self.digits)))

    def value(self, lam: int) -> ValuedPadic:
        p = self.p
        lam %= p
        value = self.const
        if lam:
            y = (self.n * lam) % p
            teich_y = teichmuller_table(p, self.digits)[y]
            powers = {e: pow(teich_y, (p - 1 - e) % (p - 1), self.mod)
                      for e in {e for e, _ in self.char_terms}}
            acc = ValuedPadic.zero(p)
            for e, coeff in self.char_terms:
                acc = acc + coeff * ValuedPadic(p, 0, PadicUnit(powers[e], p, self.digits))
            value = value + acc * ValuedPadic.from_fraction(Fraction(1, p - 1),
                                                            p, self.digits)
        return value

    def count(self, lam: int) -> int:
        return reconstruct_integer(self.value(lam), self.total)


class _FFEngine:
    """Finite-field-hypergeometric count (p == 1 mod n) with a chosen character generator
    T = wbar^alpha, gcd(alpha, p-1) = 1."""

    def __init__(self, p: int, n: int, kt: int, alpha: int = 1):
        if (p - 1) % n:
            raise InstanceError(f"p={p} is not 1 mod n={n}")
        if gcd(alpha, p - 1) != 1:
            raise InstanceError("generator exponent must be coprime to p-1")
        inst = DworkInstance(p, n, 1)
        self.p, self.n, self.t = p, n, inst.t
        self.digits = k_working(p, n, kt)
        self.total = inst.projective_total
        self.base = (p ** (n - 1) - 1) // (p - 1)
        self.classes = []
        for rep in canonical_classes(n, n):
            pd = derive_params(rep.wstar, n, n)
            pref = gk_product([(gauss_gk(alpha * wi * self.t, p, self.digits), 1)
                               for wi in rep.wstar], p, self.digits)
            a_exps = tuple((alpha * (n - k) * self.t) % (p - 1) for k in sorted(pd.S_w))
            b_exps = []
            for k in sorted(pd.S_wc):
                b_exps.extend([(alpha * (n - k) * self.t) % (p - 1)] * (pd.n_k[k] - 1))
            self.classes.append((pref, FParams(a_exps, tuple(b_exps))))

    def value(self, lam: int) -> ValuedPadic:
        p = self.p
        lam %= p
        if lam == 0:
            raise InstanceError("lambda = 0: use the Gauss-sum count")
        x = pow(lam, -self.n, p)
        value = ValuedPadic.from_int(self.base, p, self.digits)
        for pref, params in self.classes:
            value = value + pref * eval_F(params, x, p, self.digits)
        return value

    def count(self, lam: int) -> int:
        return reconstruct_integer(self.value(lam), self.total)


@lru_cache(maxsize=None)
def _main_engine(p, n, kt):
    return _MainEngine(p, n, kt)


@lru_cache(maxsize=None)
def _koblitz_engine(p, n, kt):
    return _KoblitzEngine(p, n, kt)


@lru_cache(maxsize=None)
def _ff_engine(p, n, kt, alpha):
    return _FFEngine(p, n, kt, alpha)


def count_main(p: int, n: int, lam: int, kt: int | None = None) -> int:
    """N_p(lambda) by the main hypergeometric formula; lambda != 0, p not dividing n."""
    inst = DworkInstance(p, n, lam)
    if inst.lam == 0:
        raise InstanceError("lambda = 0: the main formula assumes lambda in F_p^*; "
                            "use the Gauss-sum count")
    return _main_engine(p, n, kt if kt is not None else k_target(p, n)).count(inst.lam)


def main_value(p: int, n: int, lam: int, kt: int | None = None) -> ValuedPadic:
    """The pre-reconstruction p-adic value of the main count."""
    inst = DworkInstance(p, n, lam)
    return _main_engine(p, n, kt if kt is not None else k_target(p, n)).value(inst.lam)


def relprime_value(p: int, n: int, lam: int, kt: int | None = None) -> ValuedPadic:
    """Pre-reconstruction value of the d = 1 specialization."""
    inst = DworkInstance(p, n, lam)
    if inst.d != 1:
        raise InstanceError(f"gcd(p-1, n) = {inst.d} != 1: the d = 1 formula does not apply")
    if inst.lam == 0:
        raise InstanceError("lambda = 0: use the Gauss-sum count")
    pd = derive_params((0,) * n, n, 1)
    assert pd.A_w == tuple(Fraction(h, n) for h in range(1, n))
    assert pd.B_w == (Fraction(1),) * (n - 1)
    digits = k_working(p, n, kt)
    g = class_g_value(pd, pow(inst.lam, n, p), p, n, digits)
    value = ValuedPadic.from_int((p ** (n - 1) - 1) // (p - 1), p, digits)
    return value + (g if n % 2 == 0 else -g)


def count_relprime(p: int, n: int, lam: int, kt: int | None = None) -> int:
    """N_p(lambda) by the d = 1 specialization: one (n-1)G(n-1) evaluation."""
    value = relprime_value(p, n, lam, kt)
    return reconstruct_integer(value, DworkInstance(p, n, lam).projective_total)


def count_ff(p: int, n: int, lam: int, kt: int | None = None,
             generator_exponent: int = 1) -> int:
    """N_p(lambda) by the finite-field-hypergeometric form (p == 1 mod n)."""
    inst = DworkInstance(p, n, lam)
    if inst.lam == 0:
        raise InstanceError("lambda = 0: use the Gauss-sum count")
    return _ff_engine(p, n, kt if kt is not None else k_target(p, n),
                      generator_exponent).count(inst.lam)


def count_koblitz(p: int, n: int, lam: int, kt: int | None = None) -> int:
    """N_p(lambda) by the Gauss-sum count; lambda = 0 allowed."""
    inst = DworkInstance(p, n, lam)
    return _koblitz_engine(p, n, kt if kt is not None else k_target(p, n)).count(inst.lam)


def method_value(name: str, p: int, n: int, lam: int,
                 kt: int | None = None) -> ValuedPadic:
    """Pre-reconstruction p-adic value of a named formula method."""
    inst = DworkInstance(p, n, lam)
    kt = kt if kt is not None else k_target(p, n)
    if name == "main":
        return _main_engine(p, n, kt).value(inst.lam)
    if name == "koblitz":
        return _koblitz_engine(p, n, kt).value(inst.lam)
    if name == "relprime":
        return relprime_value(p, n, inst.lam, kt)
    if name == "ff":
        return _ff_engine(p, n, kt, 1).value(inst.lam)
    raise ValueError(f"unknown method {name!r}")
