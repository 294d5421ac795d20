"""Theta transformation matrices M_{u,v}(sigma) and numeric theta series.

The defining exponential sum (valid for every sigma in SL2(Z)) is

    M_{u,v} = (-i/(c*sqrt(D))) * sum_{gamma in u + O_K/cO_K}
                  e[(a|gamma|^2 - gamma*conj(v) - conj(gamma)*v + d|v|^2)/c]

for c != 0, and sign(a)*delta_{u,av}*e[ab|u|^2] for c = 0.  For c | D, c > 0
there are closed forms (one for odd D, a two-factor one for even D) which are
much cheaper; both are implemented and cross-checked exactly in the tests.

The scalar -i/sqrt(D) is represented exactly as -G(chi_K)/D in the cyclotomic
ring (G(chi_K) = i*sqrt(D) since chi_K is odd).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import valuation
from .charsums import gauss_sum
from .cyclotomic import CycloNum, ext_root, root_of_unity
from .quadfield import DiffClass, QuadField, chi_component, class_index, classes


@dataclass(frozen=True)
class Mat2Z:
    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inv(self) -> "Mat2Z":
        if self.det() != 1:
            raise ValueError("only SL2 matrices are inverted here")
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "Mat2Z":
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


IDENTITY = Mat2Z(1, 0, 0, 1)
J = Mat2Z(0, -1, 1, 0)
T = Mat2Z(1, 1, 0, 1)


@lru_cache(maxsize=None)
def _minus_i_over_sqrtD(D: int) -> CycloNum:
    field = QuadField(D)
    return gauss_sum(chi_component(field, D)) * Fraction(-1, D)


def theta_matrix(field: QuadField, sigma: Mat2Z) -> list[list[CycloNum]]:
    """The D x D matrix (M_{u,v}(sigma)) from the defining sum, rows/columns
    in canonical class order."""
    if sigma.det() != 1:
        raise ValueError("sigma must have determinant 1")
    a, b, c, d = sigma.entries()
    D = field.D
    cls = classes(field)
    if c == 0:
        # sign(a) * delta_{u, a v} * e[a b |u|^2]
        out = [[CycloNum.zero() for _ in cls] for _ in cls]
        for v in cls:
            u = v.scaled(a)
            val = (1 if a > 0 else -1) * root_of_unity(Fraction(a * b * u.dnorm, D))
            out[class_index(field, u)][class_index(field, v)] = val
        return out

    pref = _minus_i_over_sqrtD(D) * Fraction(1, c)
    # The lattice sum per entry has |c|^2 terms gamma = u + al + be*omega;
    # scaling all coordinates by t = 2D makes every exponent an integer over
    # t^2 |c|, so the grid runs in vectorized integer arithmetic (a CycloNum
    # add per term would copy the growing accumulator, O(c^4) overall).
    import numpy as np

    t = 2 * D
    cabs = abs(c)
    L0 = t * t * cabs
    al = np.repeat(np.arange(cabs, dtype=np.int64), cabs)
    be = np.tile(np.arange(cabs, dtype=np.int64), cabs)
    # gamma = u + al + be*omega in coordinates (g1, g2) along (1, i sqrt(D));
    # odd D: omega = 1/2 + i sqrt(D)/2, even D: omega = i sqrt(D)/2
    U1 = [int(t * u.coords()[0]) for u in cls]
    U2 = [int(t * u.coords()[1]) for u in cls]
    out = []
    for ui, u in enumerate(cls):
        if field.e == 0:
            G1 = U1[ui] + t * al + (t // 2) * be
        else:
            G1 = U1[ui] + t * al
        G2 = U2[ui] + (t // 2) * be
        NG = a * (G1 * G1 + D * G2 * G2)
        row = []
        for vi, v in enumerate(cls):
            V1, V2 = U1[vi], U2[vi]
            # t^2 * (a*nrm(gamma) - (gamma*conj(v) + conj(gamma)*v) + d*nrm(v)),
            # to be divided by t^2 * c
            num = NG - 2 * (G1 * V1 + D * G2 * V2) + d * (V1 * V1 + D * V2 * V2)
            if c < 0:
                num = -num
            keys, counts = np.unique(np.mod(num, L0), return_counts=True)
            g = L0
            for k in keys:
                g = math.gcd(g, int(k))
            acc = CycloNum(L0 // g, {
                int(k) // g: Fraction(int(m)) for k, m in zip(keys, counts)
            })
            row.append(pref * acc)
        out.append(row)
    return out


def _theta_closed_entry_odd(field: QuadField, sigma: Mat2Z, u: DiffClass, v: DiffClass) -> CycloNum:
    a, b, c, d = sigma.entries()
    D = field.D
    (x,), (y,) = u.key, v.key
    if (x - d * y) % c != 0:
        return CycloNum.zero()
    return root_of_unity(Fraction(a * x * x - 2 * x * y + d * y * y, D * c))


def _theta_closed_entry_even(field: QuadField, sigma: Mat2Z, u: DiffClass, v: DiffClass) -> CycloNum:
    a, b, c, d = sigma.entries()
    D = field.D
    f = valuation(c, 2)
    cp = c >> f  # odd part c'
    x1, x2 = u.key
    y1, y2 = v.key
    if (x2 - d * y2) % cp != 0:
        return CycloNum.zero()
    q1 = a * x1 * x1 - 2 * x1 * y1 + d * y1 * y1
    q2 = a * x2 * x2 - 2 * x2 * y2 + d * y2 * y2
    if f == 0:
        return root_of_unity(Fraction(c * q1, 4) + Fraction(q2, D * c))
    if f == 1:
        if (x1 - d * y1) % 2 != 1 or (x2 - d * y2 - D // 4) % 2 != 0:
            return CycloNum.zero()
        return root_of_unity(
            Fraction(d * b * y1 * y1, 4) + Fraction(4 * b * y1 + a * cp, 8)
            + Fraction(q2, D * c)
        )
    # f in {2, 3}
    if (x1 - d * y1) % 2 != 0 or (x2 - d * y2) % (2 ** (f - 1)) != 0:
        return CycloNum.zero()
    val = root_of_unity(Fraction(d * b * y1 * y1, 4) + Fraction(q2, D * c)) * (
        1 + root_of_unity(Fraction(a * cp * (D // 4) + a * cp * (x2 - d * y2), 2**f))
    )
    tail = root_of_unity(Fraction(a * cp, 2**f))
    return val * (1 + tail) if f == 2 else val * tail


def theta_matrix_closed_factored(field: QuadField, sigma: Mat2Z) -> tuple[CycloNum, list[list[CycloNum]]]:
    """Closed-form M(sigma) for c | D, c > 0, as (scalar, light matrix) with
    M = scalar * light; the light entries are monomials (or short sums), the
    dense Gauss-sum factor lives in the scalar."""
    a, b, c, d = sigma.entries()
    if sigma.det() != 1:
        raise ValueError("sigma must have determinant 1")
    if c <= 0 or field.D % c != 0:
        raise ValueError("closed form requires c | D with c > 0")
    D = field.D
    cls = classes(field)
    if c == D:
        # M_{u,v} = delta_{u, d v} e[a b |u|^2] chi(d)
        out = [[CycloNum.zero() for _ in cls] for _ in cls]
        chid = field.chi(d)
        for v in cls:
            u = v.scaled(d)
            out[class_index(field, u)][class_index(field, v)] = chid * root_of_unity(
                Fraction(a * b * u.dnorm, D)
            )
        return CycloNum.from_rational(1), out
    if field.e == 0:
        scalar = _minus_i_over_sqrtD(D) * gauss_sum(chi_component(field, c), a)
        entry = _theta_closed_entry_odd
    else:
        f = valuation(c, 2)
        cp = c >> f
        # 1/(i*sqrt(D)) = -i/sqrt(D); 2-power prefactor: 1, 2, 2^{f-2}
        pref = Fraction(1) if f == 0 else Fraction(2) if f == 1 else Fraction(2**f, 4)
        scalar = (
            gauss_sum(chi_component(field, cp), a * (2**f)) * _minus_i_over_sqrtD(D) * pref
        )
        entry = _theta_closed_entry_even
    return scalar, [[entry(field, sigma, u, v) for v in cls] for u in cls]


def theta_matrix_closed(field: QuadField, sigma: Mat2Z) -> list[list[CycloNum]]:
    """Closed-form M(sigma) for c | D, c > 0 (det sigma = 1)."""
    scalar, light = theta_matrix_closed_factored(field, sigma)
    return [[scalar * x if x.coeffs else x for x in row] for row in light]


def matrices_equal(A: list[list[CycloNum]], B: list[list[CycloNum]]) -> bool:
    return all((x - y).is_zero() for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def mat_mul(A: list[list[CycloNum]], B: list[list[CycloNum]]) -> list[list[CycloNum]]:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = CycloNum.zero()
            for k in range(n):
                if A[i][k].coeffs and B[k][j].coeffs:
                    s = s + A[i][k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# numeric theta series, for analytic spot checks only


def theta_eval(field: QuadField, u: DiffClass, tau: complex, z: complex, w: complex,
               radius: int = 12) -> complex:
    """Truncated theta_u(tau, z, w) = sum_{a in u+O_K} e[|a|^2 tau + conj(a) z + a w].

    The lattice sum runs over a = u + alpha + beta*omega with
    |alpha|, |beta| <= radius.
    """
    if tau.imag <= 0:
        raise ValueError("tau must be in the upper half-plane")
    u1, u2 = u.coords()
    D = field.D
    sD = math.sqrt(D)
    total = 0j
    for al in range(-radius, radius + 1):
        for be in range(-radius, radius + 1):
            if field.e == 0:
                g1 = float(u1) + al + be / 2.0
                g2 = float(u2) + be / 2.0
            else:
                g1 = float(u1) + al
                g2 = float(u2) + be / 2.0
            aa = complex(g1, g2 * sD)
            nrm = g1 * g1 + D * g2 * g2
            total += cmath.exp(2j * cmath.pi * (nrm * tau + aa.conjugate() * z + aa * w))
    return total


def theta_slash(field: QuadField, u: DiffClass, sigma: Mat2Z, tau: complex, z: complex,
                w: complex, radius: int = 12) -> complex:
    """(theta_u |_{1,1} sigma)(tau, z, w) for sigma in SL2(Z), numerically."""
    a, b, c, d = sigma.entries()
    j = c * tau + d
    stau = (a * tau + b) / j
    return (
        1 / j
        * cmath.exp(-2j * cmath.pi * c * z * w / j)
        * theta_eval(field, u, stau, z / j, w / j, radius)
    )
