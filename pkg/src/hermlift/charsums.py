"""Gauss sums, the Gauss--Salie identity, and quadratic norm sums.

All sums are evaluated exactly in the cyclotomic ring; the closed forms
G(psi_m) = eps(psi_m)*sqrt(m) are checked in squared (exact) and embedded
(numeric) form.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import kronecker
from .cyclotomic import CycloNum, e_frac
from .quadfield import Character, QuadField


class LegendreChar:
    """The Legendre symbol (* | p) as a standalone character mod an odd prime."""

    def __init__(self, p: int):
        if p == 2 or p < 2:
            raise ValueError("p must be an odd prime")
        self.modulus = p

    def __call__(self, n: int) -> int:
        return kronecker(n, self.modulus)

    @property
    def parity(self) -> int:
        return self(-1)


def gauss_sum(psi, b: int = 1) -> CycloNum:
    """G(psi; b) = sum_{a mod M} psi(a) e[a*b/M], exactly."""
    M = psi.modulus
    if M == 1:
        return CycloNum.from_rational(1)
    out = CycloNum.zero()
    for a in range(M):
        v = psi(a)
        if v:
            out = out + v * e_frac(a * b, M)
    return out


def gauss_sum_inverse(psi, b: int = 1) -> CycloNum:
    """1/G(psi; b) for gcd(b, M) = 1, via 1/G(psi; b) = G(psi; -b)/M."""
    M = psi.modulus
    if math.gcd(b, M) != 1:
        raise ValueError("twist must be coprime to the modulus")
    return gauss_sum(psi, -b) * Fraction(1, M)


def check_closed_form(psi: Character) -> bool:
    """True iff G(psi_m)^2 = psi_m(-1)*m exactly and the embedding matches
    eps(psi_m)*sqrt(m) within 1e-9."""
    m = psi.modulus
    g = gauss_sum(psi)
    if not (g * g - psi.parity * m).is_zero():
        return False
    target = math.sqrt(m) * (1 if psi.parity == 1 else 1j)
    return abs(g.embed() - target) < 1e-9


def salie_lhs(p: int, x: int, y: int, z: int) -> CycloNum:
    """sum_{j=1}^{p-1} (j|p) e[z(j x^2 + j^{-1} y^2)/p], by brute force."""
    psi = LegendreChar(p)
    out = CycloNum.zero()
    for j in range(1, p):
        jinv = pow(j, -1, p)
        out = out + psi(j) * e_frac(z * (j * x * x + jinv * y * y), p)
    return out


def salie_rhs(p: int, x: int, y: int, z: int) -> CycloNum:
    """G(psi; z) * [(psi(x^2)+psi(y^2))/(1+psi(y^2))] * sum_{g^2=y^2} e[2xzg/p].

    psi(x^2) is 0 when p | x and 1 otherwise, so the middle factor is the
    rational 0, 1/2 or 1 and the division is always by 1 or 2.
    """
    psi = LegendreChar(p)
    mid = Fraction(psi(x * x) + psi(y * y), 1 + psi(y * y))
    if mid == 0:
        return CycloNum.zero()
    tail = CycloNum.zero()
    for g in range(p):
        if (g * g - y * y) % p == 0:
            tail = tail + e_frac(2 * x * z * g, p)
    return gauss_sum(psi, z) * mid * tail


def salie_check(p: int, x: int, y: int, z: int) -> tuple[CycloNum, CycloNum, bool]:
    if z % p == 0:
        raise ValueError("p must not divide z")
    lhs = salie_lhs(p, x, y, z)
    rhs = salie_rhs(p, x, y, z)
    return lhs, rhs, (lhs - rhs).is_zero()


def norm_sum(field: QuadField, N: int, t: int) -> CycloNum:
    """sum over gamma in O_K/N O_K of e[t|gamma|^2 / N]."""
    tr, nm = field.omega_trace, field.omega_norm
    out = CycloNum.zero()
    for a in range(N):
        for b in range(N):
            n = a * a + tr * a * b + nm * b * b
            out = out + e_frac(t * n, N)
    return out


def norm_sum_check(field: QuadField, N: int, t: int) -> bool:
    """True iff the norm sum equals chi(N)*N exactly (needs gcd(D,N)=1=gcd(t,N))."""
    if math.gcd(field.D, N) != 1:
        raise ValueError("N must be coprime to D")
    if math.gcd(t, N) != 1:
        raise ValueError("t must be coprime to N")
    return (norm_sum(field, N, t) - field.chi(N) * N).is_zero()
