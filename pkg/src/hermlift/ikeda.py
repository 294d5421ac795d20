"""Coefficient combinatorics of the map onto the plus space.

Works with synthetic Hecke eigendata: a multiplicative coefficient function
a(M) generated from prime values a(p) by the standard recursion

    a(p^{e+1}) = a(p) a(p^e) - chi(p) p^{w-1} a(p^{e-1})   (p prime to level)
    a(p^e)     = a(p)^e                                     (p | level)

with nebentypus chi = chi_K and level D*m.  For every subset Q of the prime
divisors of D there is a twisted form f_Q with

    a_{f_Q}(M) = a_f(M' M'_Q) * conj(a_f(M_Q)) * prod_{q in Q} chi_under_q(M)

(M' = part of M prime to D, M_Q / M'_Q = parts supported on Q / on D\\Q), and

    f*[l] = sum_{Q} chi_Q(-l) f_Q,    chi_Q = prod_{q in Q} chi_q.

The local factor chi_under_q(M) of the idele character is realized as
chi_q(M / M_q) * eta_q^{val_q(M)} with eta_q = prod_{p | D, p != q} chi_p(q);
this operational definition is fixed by requiring the subset-sum and the
product closed form of a_{f*[l]} to agree (cross-checked on every call).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arith import factorize, prime_divisors, valuation
from .cyclotomic import CycloNum
from .quadfield import QuadField, a_D


@dataclass(frozen=True)
class EigenData:
    """Synthetic Hecke eigendata: weight w, level D*m (gcd(m, D) = 1),
    character chi_K, and prime coefficients ap (exact CycloNum values)."""

    field: QuadField
    weight: int
    level_m: int
    ap: dict
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if math.gcd(self.level_m, self.field.D) != 1:
            raise ValueError("m must be coprime to D")

    @property
    def level(self) -> int:
        return self.field.D * self.level_m

    def a(self, p: int) -> CycloNum:
        if p not in self.ap:
            raise KeyError(f"no eigenvalue data for prime {p}")
        return _cyc(self.ap[p])


def _cyc(x) -> CycloNum:
    if isinstance(x, CycloNum):
        return x
    return CycloNum.from_rational(x)


def coeff(ed: EigenData, M: int) -> CycloNum:
    """a(M) by multiplicativity and the Hecke recursion."""
    if M < 1:
        raise ValueError("M must be positive")
    if M in ed._memo:
        return ed._memo[M]
    out = CycloNum.from_rational(1)
    for p, e in factorize(M):
        out = out * _prime_power(ed, p, e)
    ed._memo[M] = out
    return out


def _prime_power(ed: EigenData, p: int, e: int) -> CycloNum:
    apv = ed.a(p)
    if ed.level % p == 0:
        out = CycloNum.from_rational(1)
        for _ in range(e):
            out = out * apv
        return out
    chi_pw = ed.field.chi(p) * p ** (ed.weight - 1)
    prev, cur = CycloNum.from_rational(1), apv
    for _ in range(e - 1):
        prev, cur = cur, apv * cur - chi_pw * prev
    return cur if e >= 1 else prev


def validate_eigendata(ed: EigenData) -> None:
    """conj(a(p)) = chi(p) a(p) for p prime to the level, and
    a(q) conj(a(q)) = q^{w-1} for q | D with a(q) != 0."""
    for p, v in ed.ap.items():
        v = _cyc(v)
        if ed.level % p != 0:
            if not (v.conjugate() - ed.field.chi(p) * v).is_zero():
                raise ValueError(f"conj(a({p})) != chi({p}) a({p})")
        elif ed.field.D % p == 0 and not v.is_zero():
            if not (v * v.conjugate() - p ** (ed.weight - 1)).is_zero():
                raise ValueError(f"|a({p})|^2 != {p}^(w-1)")


def synthetic_eigendata(field: QuadField, weight: int, level_m: int,
                        primes: list[int], rng: random.Random) -> EigenData:
    """Random eigendata obeying the structural constraints: a(p) rational
    (chi(p) = 1), i * rational (chi(p) = -1), a(q) = i^s q^{(w-1)/2} for
    q | D (w odd), a(p) rational for p | m."""
    if weight % 2 == 0:
        raise ValueError("weight must be odd (it is k - 1 for even k)")
    ap = {}
    half = (weight - 1) // 2
    for p in primes:
        if field.D % p == 0:
            unit = [_cyc(1), CycloNum.i(), _cyc(-1), -CycloNum.i()][rng.randrange(4)]
            ap[p] = unit * p**half
        elif level_m % p == 0:
            ap[p] = CycloNum.from_rational(rng.randrange(-p, p + 1))
        else:
            c = Fraction(rng.randrange(-2 * p, 2 * p + 1))
            ap[p] = _cyc(c) if field.chi(p) == 1 else CycloNum.i() * c
    ed = EigenData(field, weight, level_m, ap)
    validate_eigendata(ed)
    return ed


# ---------------------------------------------------------------------------
# the twists f_Q and the star map


def _split_M(field: QuadField, Q: frozenset, M: int) -> tuple[int, int, int]:
    """(M', M'_Q, M_Q): parts of M supported off D, on D \\ Q, on Q."""
    Mp = MpQ = MQ = 1
    for p, e in factorize(M):
        if field.D % p != 0:
            Mp *= p**e
        elif p in Q:
            MQ *= p**e
        else:
            MpQ *= p**e
    return Mp, MpQ, MQ


def _eta(field: QuadField, q: int) -> int:
    """eta_q = prod_{p | D, p != q} chi_p(q)."""
    out = 1
    for p in prime_divisors(field.D):
        if p != q:
            out *= field.chi_p(p, q)
    return out


def chi_under(field: QuadField, q: int, M: int) -> int:
    """The local factor chi_under_q(M) = chi_q(M / M_q) * eta_q^{val_q(M)}."""
    e = valuation(M, q) if M else 0
    return field.chi_p(q, M // q**e) * _eta(field, q) ** e


def fQ_coeff(ed: EigenData, Q, M: int) -> CycloNum:
    """a_{f_Q}(M) = a_f(M' M'_Q) conj(a_f(M_Q)) prod_{q in Q} chi_under_q(M)."""
    Q = frozenset(Q)
    if not Q <= set(prime_divisors(ed.field.D)):
        raise ValueError("Q must consist of prime divisors of D")
    Mp, MpQ, MQ = _split_M(ed.field, Q, M)
    out = coeff(ed, Mp * MpQ) * coeff(ed, MQ).conjugate()
    for q in Q:
        out = out * chi_under(ed.field, q, M)
    return out


def _subsets(primes: list[int]):
    n = len(primes)
    for mask in range(1 << n):
        yield frozenset(p for i, p in enumerate(primes) if mask >> i & 1)


def fstar_coeff(ed: EigenData, ell: int, M: int) -> CycloNum:
    """a_{f*[ell]}(M) = sum_{Q} chi_Q(-ell) a_{f_Q}(M), cross-checked on every
    call against the closed form

      a_f(M') a_D(ell M) prod_{q | gcd(D,M)}
          (a_f(M_q) + chi_q(-1) chi_q(ell) conj(a_f(M_q)) chi_under_q(M)).
    """
    field = ed.field
    if math.gcd(ell, field.D) != 1:
        raise ValueError("ell must be coprime to D")
    QD = prime_divisors(field.D)
    total = CycloNum.zero()
    for Q in _subsets(QD):
        chiQ = 1
        for q in Q:
            chiQ *= field.chi_p(q, -ell)
        total = total + chiQ * fQ_coeff(ed, Q, M)
    # closed form
    Mp = 1
    for p, e in factorize(M):
        if field.D % p != 0:
            Mp *= p**e
    prod = coeff(ed, Mp) * a_D(field, ell * M)
    for q in QD:
        eq = valuation(M, q) if M else 0
        if eq == 0:
            continue
        Mq = q**eq
        aq = coeff(ed, Mq)
        prod = prod * (
            aq
            + field.chi_p(q, -1) * field.chi_p(q, ell) * chi_under(field, q, M) * aq.conjugate()
        )
    if not (total - prod).is_zero():
        raise AssertionError(
            f"subset sum and closed form disagree at M={M}, ell={ell}"
        )
    return total


def fstar_plus_check(ed: EigenData, ell: int, bound: int) -> bool:
    """Plus membership of f*[ell]|sigma_ell up to the given coefficient bound:
    its n-th coefficient is a_{f*[ell]}(n/ell) when ell | n (else 0) and must
    vanish whenever a_D(n) = 0."""
    validate_eigendata(ed)
    if math.gcd(ed.field.D, ell) != 1:
        raise ValueError("ell must be coprime to D")
    for n in range(1, bound + 1):
        if a_D(ed.field, n) != 0 or n % ell != 0:
            continue
        if not fstar_coeff(ed, ell, n // ell).is_zero():
            return False
    return True


def rho_coeff(ed: EigenData, M: int) -> CycloNum:
    """a_{f^rho}(M) = conj(a_f(M)) (the form with conjugated coefficients)."""
    return coeff(ed, M).conjugate()
