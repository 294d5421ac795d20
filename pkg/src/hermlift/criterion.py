"""The arithmetic criterion: A(sigma, v, w) = delta^{mod D}_{D|w|^2, D|v|^2}.

For sigma = (a b; c d) in SL2(Z) and classes v, w of [d_K], define per
j mod D the data mu = gcd(a+cj, D), m = component(D, mu), n = D/m and an
integer kappa with

    kappa = (b+dj)/(a+cj)                      mod n, and additionally
    kappa = ((b+dj+c)/2^f)/((a+cj)/2^f)        mod m/mu   when m != mu,

(f = val_2(a+cj); when a+cj = 0 take mu = m = D, n = 1, kappa = 0).  The
criterion left-hand side is

    A = sum_u M_{u,v}(sigma)/D * A_u,
    A_u = sum_{j mod D, gcd(D|w|^2, m) = mu}
              (a_w/a_u) R_sigma(w,j) G(psi_m; nc) psi_n(a+cj)
              e[|u|^2 j - |w|^2 kappa],

and the statement verified here is A = 1 if D|w|^2 = D|v|^2 mod D, else 0.

A_u also has closed forms when c | D, c > 0 (one for odd D; a two-branch
B_u + C_u expression for even D); both routes are implemented and compared
exactly.  The closed forms absorb the a_w/a_u factor.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import bezout, component, crt, divisors, inverse_mod, valuation
from .charsums import gauss_sum
from .cyclotomic import CycloNum, ext_root, root_of_unity
from .quadfield import DiffClass, QuadField, chi_component, class_index, classes
from .thetamat import (IDENTITY, Mat2Z, theta_matrix, theta_matrix_closed,
                       theta_matrix_closed_factored)


@dataclass(frozen=True)
class SigmaContext:
    """Per-j data entering the transformation formula."""

    field: QuadField
    sigma: Mat2Z
    j: int
    mu: int
    m: int
    n: int
    f: int      # val_2(a+cj); only meaningful when m != mu
    kappa: int
    lam: int    # (b + dj - kappa*(a + cj)) / n


def sigma_context(field: QuadField, sigma: Mat2Z, j: int) -> SigmaContext:
    if sigma.det() != 1:
        raise ValueError("sigma must have determinant 1")
    a, b, c, d = sigma.entries()
    D = field.D
    acj = a + c * j
    bdj = b + d * j
    if acj == 0:
        return SigmaContext(field, sigma, j, D, D, 1, 0, 0, bdj)
    mu = math.gcd(acj, D)
    m = component(D, mu)
    n = D // m
    f = 0
    if m != mu:
        f = valuation(acj, 2)
        kappa = crt([
            (bdj * inverse_mod(acj, n), n),
            (((bdj + c) >> f) * inverse_mod(acj >> f, m // mu), m // mu),
        ])
    else:
        kappa = bdj * inverse_mod(acj, n) % n if n > 1 else 0
    num = bdj - kappa * acj
    assert num % n == 0
    return SigmaContext(field, sigma, j, mu, m, n, f, kappa, num // n)


def R_factor(ctx: SigmaContext, v: DiffClass) -> CycloNum:
    """R_sigma(v, j): 1 unless m = 4*mu, else
    (1 + e[-(a+cj) D|v|^2 / (2m)] chi_2(5 - 2nc)) / 2."""
    if ctx.m != 4 * ctx.mu:
        return CycloNum.from_rational(1)
    a, _, c, _ = ctx.sigma.entries()
    acj = a + c * ctx.j
    tw = root_of_unity(Fraction(-acj * v.dnorm, 2 * ctx.m))
    return (1 + tw * ctx.field.chi2(5 - 2 * ctx.n * c)) * Fraction(1, 2)


@lru_cache(maxsize=None)
def _j_table(D: int, entries: tuple[int, int, int, int]):
    """Per j: (context, G(psi_m; nc) * psi_n(a+cj)) with sigma fixed."""
    field = QuadField(D)
    sigma = Mat2Z(*entries)
    a, _, c, _ = entries
    out = []
    for j in range(D):
        ctx = sigma_context(field, sigma, j)
        g = gauss_sum(chi_component(field, ctx.m), ctx.n * c) if ctx.m > 1 else CycloNum.from_rational(1)
        psi_n = chi_component(field, ctx.n)(a + c * j)
        out.append((ctx, g * psi_n))
    return tuple(out)


def inner_sum_direct(field: QuadField, sigma: Mat2Z, u: DiffClass, w: DiffClass) -> CycloNum:
    """A_u assembled term by term over j mod D (includes the a_w/a_u factor)."""
    D = field.D
    total = CycloNum.zero()
    for ctx, base in _j_table(D, sigma.entries()):
        if math.gcd(w.dnorm, ctx.m) != ctx.mu:
            continue
        term = base * R_factor(ctx, w)
        term = term * root_of_unity(Fraction(u.dnorm * ctx.j - w.dnorm * ctx.kappa, D))
        total = total + term
    return total * Fraction(w.mult, u.mult)


def _inner_closed_odd(field: QuadField, sigma: Mat2Z, u: DiffClass, w: DiffClass) -> CycloNum:
    a, b, c, d = sigma.entries()
    D = field.D
    Dstar = D // c
    if (u.dnorm - d * d * w.dnorm) % c != 0:
        return CycloNum.zero()
    h = crt([(b % c, c), (inverse_mod(c % Dstar, Dstar), Dstar)])
    x = u.key[0]
    F = CycloNum.zero()
    for g in range(Dstar):
        if (g * g - w.dnorm) % Dstar == 0:
            F = F + root_of_unity(Fraction(2 * x * h * h * g, Dstar))
    return (
        c
        * F
        * gauss_sum(chi_component(field, Dstar))
        * chi_component(field, c)(a)
        * root_of_unity(Fraction(-w.dnorm * d * h, D) + Fraction(-u.dnorm * a * h * h, Dstar))
    )


def _inner_closed_even(field: QuadField, sigma: Mat2Z, u: DiffClass, w: DiffClass) -> CycloNum:
    a, b, c, d = sigma.entries()
    D, e, Dp = field.D, field.e, field.Dprime
    f = valuation(c, 2)
    cp = c >> f
    cstar = (2**e) * cp if f >= 1 else cp
    Dstar = D // cstar
    f2 = 0 if f >= 1 else e
    f1 = f2 if w.dnorm == 0 else min(f2, valuation(w.dnorm, 2))
    dnu, dnw = u.dnorm, w.dnorm
    chi2 = field.chi2

    # F_u: sum over square roots of D|w|^2 mod D'/c'
    Dpc = Dp // cp
    x = u.key[1]
    F = CycloNum.zero()
    for g in range(Dpc):
        if (g * g - dnw) % Dpc == 0:
            F = F + ext_root(Fraction(2 * x * g, c * cstar * (2**f2)), Dpc)
    K = (
        ext_root(Fraction(-dnu * a * b, D // cp), cp)
        * ext_root(Fraction(-dnu * a, c * cstar), Dstar)
        * ext_root(Fraction(-dnw * d, c * cstar), Dstar)
    )

    # E_u
    if c % 2 == 1:
        E = gauss_sum(chi_component(field, 2**e), Dp * c) * chi2(dnu + dnw)
    else:
        if (dnu - dnw - c) % (2 ** (e - 1)) != 0:
            E = CycloNum.zero()
        else:
            E = (
                (2 ** (e - 1))
                * chi2(a)
                * root_of_unity(Fraction(-Dp * dnw * a * b, 2**e))
                * (
                    1
                    + root_of_unity(
                        Fraction(Dp * (dnu - dnw * (2 * b * c + 1) - dnw * c * d), 2**e)
                    )
                    * chi2(1 + a * c)
                )
            )

    # chi_p(D|u|^2) is 0 or 1 for every p | D (a_u >= 1), so these are safe
    ratio = Fraction(1 + chi2(dnw), 1 + chi2(dnu))
    B = CycloNum.zero()
    if (dnu - d * d * dnw) % cp == 0:
        B = (
            cp
            * F
            * K
            * E
            * ratio
            * gauss_sum(chi_component(field, Dpc), (2**f2) * cstar * c)
            * chi_component(field, cp)(a)
        )
    if f1 == 0:
        return B

    # C_u branch: only reachable for odd c with 2 | D|w|^2
    if e - f1 == 0:
        Eprime = CycloNum.from_rational(1)
    elif e - f1 == 1:
        Eprime = CycloNum.from_rational((-1) ** dnu)
    elif dnu % 2 == 0:
        Eprime = CycloNum.from_rational((-1) ** (dnu // 2))
    else:
        ex = dnu + dnw // 2
        assert ex % 2 == 0
        Eprime = CycloNum.from_rational((-1) ** (ex // 2) * chi2(-1))
    C = CycloNum.zero()
    if (dnu - d * d * dnw) % c == 0:
        C = (
            c
            * F
            * K
            * Eprime
            * Fraction(1, 1 + chi2(dnu))
            * gauss_sum(chi_component(field, Dstar))
            * chi_component(field, c)(a)
        )
    return B + C


def inner_sum_closed(field: QuadField, sigma: Mat2Z, u: DiffClass, w: DiffClass) -> CycloNum:
    """Closed-form A_u for c | D, c > 0."""
    a, b, c, d = sigma.entries()
    if c <= 0 or field.D % c != 0:
        raise ValueError("closed form requires c | D with c > 0")
    if field.e == 0:
        return _inner_closed_odd(field, sigma, u, w)
    return _inner_closed_even(field, sigma, u, w)


def expected_delta(field: QuadField, v: DiffClass, w: DiffClass) -> int:
    return 1 if (w.dnorm - v.dnorm) % field.D == 0 else 0


def criterion_lhs(field: QuadField, sigma: Mat2Z, v: DiffClass, w: DiffClass,
                  use_closed: bool = False) -> CycloNum:
    """A = sum_u M_{u,v}(sigma) A_u / D."""
    cls = classes(field)
    if use_closed:
        M = theta_matrix_closed(field, sigma)
        inner = inner_sum_closed
    else:
        M = theta_matrix(field, sigma)
        inner = inner_sum_direct
    iv = class_index(field, v)
    total = CycloNum.zero()
    for i, u in enumerate(cls):
        if not M[i][iv].coeffs:
            continue
        total = total + M[i][iv] * inner(field, sigma, u, w)
    return total * Fraction(1, field.D)


# ---------------------------------------------------------------------------
# independent floating-point route


def _theta_entry_float(field: QuadField, sigma: Mat2Z, u: DiffClass, v: DiffClass) -> complex:
    a, b, c, d = sigma.entries()
    D = field.D
    u1, u2 = u.coords()
    v1, v2 = v.coords()
    tp = 2j * cmath.pi
    if c == 0:
        uu = v.scaled(a)
        if uu.key != u.key:
            return 0j
        return (1 if a > 0 else -1) * cmath.exp(tp * a * b * uu.dnorm / D)
    dv = float(d) * (float(v1) ** 2 + D * float(v2) ** 2)
    acc = 0j
    for al in range(abs(c)):
        for be in range(abs(c)):
            if field.e == 0:
                g1 = float(u1) + al + be / 2.0
                g2 = float(u2) + be / 2.0
            else:
                g1 = float(u1) + al
                g2 = float(u2) + be / 2.0
            nrm = g1 * g1 + D * g2 * g2
            pair = 2 * (g1 * float(v1) + D * g2 * float(v2))
            acc += cmath.exp(tp * (a * nrm - pair + dv) / c)
    return (-1j / (c * math.sqrt(D))) * acc


def _inner_sum_float(field: QuadField, sigma: Mat2Z, u: DiffClass, w: DiffClass) -> complex:
    a, b, c, d = sigma.entries()
    D = field.D
    tp = 2j * cmath.pi
    au = 0j
    for j in range(D):
        ctx = sigma_context(field, sigma, j)
        if math.gcd(w.dnorm, ctx.m) != ctx.mu:
            continue
        g = sum(
            chi_component(field, ctx.m)(s) * cmath.exp(tp * s * ctx.n * c / ctx.m)
            for s in range(ctx.m)
        ) if ctx.m > 1 else 1.0
        psi_n = chi_component(field, ctx.n)(a + c * j)
        if ctx.m == 4 * ctx.mu:
            r = 0.5 * (
                1
                + cmath.exp(-tp * (a + c * j) * w.dnorm / (2 * ctx.m))
                * field.chi2(5 - 2 * ctx.n * c)
            )
        else:
            r = 1.0
        au += g * psi_n * r * cmath.exp(tp * (u.dnorm * j - w.dnorm * ctx.kappa) / D)
    return au * w.mult / u.mult


def criterion_lhs_float(field: QuadField, sigma: Mat2Z, v: DiffClass, w: DiffClass) -> complex:
    """A recomputed entirely in complex floating point (no shared cyclotomic
    machinery beyond the integer context data)."""
    total = 0j
    for u in classes(field):
        m_entry = _theta_entry_float(field, sigma, u, v)
        if abs(m_entry) < 1e-15:
            continue
        total += m_entry * _inner_sum_float(field, sigma, u, w)
    return total / field.D


# ---------------------------------------------------------------------------
# verification harness


def sweep_sigmas(field: QuadField) -> list[Mat2Z]:
    """Identity plus one sigma = (a b; c d), det 1, for every c | D, c > 0 and
    every d mod D with gcd(c, d) = 1 (completed via Bezout)."""
    out = [IDENTITY]
    D = field.D
    for c in divisors(D):
        for d in range(D):
            if math.gcd(c, d) != 1:
                continue
            _, x, y = bezout(d, -c)  # d*x - c*y = 1
            out.append(Mat2Z(x, y, c, d))
    return out


def random_gamma0(field: QuadField, rng: random.Random, bound: int = 3) -> Mat2Z:
    """A random element of Gamma_0(D), drawn with lower-left entry 0 or D so
    that its theta matrix has a cheap (monomial) form."""
    D = field.D
    if rng.random() < 0.25:
        s = rng.randint(-bound, bound)
        e = 1 if rng.random() < 0.5 else -1
        return Mat2Z(e, s, 0, e)
    while True:
        x = rng.randint(-D, D)
        if x != 0 and math.gcd(x, D) == 1:
            break
    t = inverse_mod(x % D, D) + D * rng.randint(0, 1)
    return Mat2Z(x, (x * t - 1) // D, D, t)


def verify_criterion(field: QuadField, N: int = 1, *, seed: int = 0,
                     arithmetic: str = "exact", translates: int = 3,
                     tol: float = 1e-9) -> dict:
    """Check A = delta for the full representative sweep and random
    Gamma_0(D)-translates; returns a JSON-ready report."""
    if N < 1 or math.gcd(field.D, N) != 1:
        raise ValueError("level N must be a positive integer coprime to D")
    if arithmetic not in ("exact", "float"):
        raise ValueError("arithmetic must be 'exact' or 'float'")
    rng = random.Random(seed)
    t0 = time.monotonic()
    cls = classes(field)
    D = field.D
    triples = 0
    failures = []

    # A_u and the expected delta depend on u, w only through D|u|^2 mod D
    # (and the multiplicity, itself a function of that value), so evaluate
    # per distinct value and fan the verdicts out to all classes
    dn_of = [u.dnorm % D for u in cls]
    rep_of: dict[int, DiffClass] = {}
    for i, u in enumerate(cls):
        rep_of.setdefault(dn_of[i], u)

    def check_sigma(sigma: Mat2Z, scalar, M, inner) -> None:
        # M(sigma) = scalar * M: the dense Gauss-sum factor multiplies once
        # per verdict instead of once per matrix entry
        nonlocal triples
        au = {
            dnu: {dnw: inner(field, sigma, ru, rw) for dnw, rw in rep_of.items()}
            for dnu, ru in rep_of.items()
        }
        for iv, v in enumerate(cls):
            col = [(dn_of[i], M[i][iv]) for i in range(D) if M[i][iv].coeffs]
            verdict = {}
            for dnw, rw in rep_of.items():
                total = CycloNum.zero()
                for dnu, m_entry in col:
                    total = total + m_entry * au[dnu][dnw]
                got = scalar * total * Fraction(1, D)
                want = expected_delta(field, v, rw)
                verdict[dnw] = (got - want).is_zero()
                if not verdict[dnw]:
                    failures.append({
                        "sigma": list(sigma.entries()),
                        "v": list(v.key),
                        "w": list(rw.key),
                        "lhs": repr(got),
                        "expected": want,
                    })
            for iw, w in enumerate(cls):
                triples += 1
                # failure already recorded once per distinct D|w|^2 value
                _ = verdict[dn_of[iw]]

    def check_sigma_float(sigma: Mat2Z) -> None:
        nonlocal triples
        Mf = [[_theta_entry_float(field, sigma, u, v) for v in cls] for u in cls]
        au = {
            dnu: {dnw: _inner_sum_float(field, sigma, ru, rw) for dnw, rw in rep_of.items()}
            for dnu, ru in rep_of.items()
        }
        for iv, v in enumerate(cls):
            col = [(dn_of[i], Mf[i][iv]) for i in range(D) if abs(Mf[i][iv]) > 1e-15]
            verdict = {}
            for dnw, rw in rep_of.items():
                gf = sum(m_entry * au[dnu][dnw] for dnu, m_entry in col) / D
                want = expected_delta(field, v, rw)
                verdict[dnw] = abs(gf - want) < tol
                if not verdict[dnw]:
                    failures.append({
                        "sigma": list(sigma.entries()),
                        "v": list(v.key),
                        "w": list(rw.key),
                        "lhs": repr(gf),
                        "expected": want,
                    })
            for iw, w in enumerate(cls):
                triples += 1
                _ = verdict[dn_of[iw]]

    from .thetamat import mat_mul

    for base in sweep_sigmas(field):
        gammas = [random_gamma0(field, rng) for _ in range(translates)]
        if arithmetic == "float":
            check_sigma_float(base)
            for g in gammas:
                check_sigma_float(base * g)
            continue
        use_closed = base.c > 0 and D % base.c == 0
        if use_closed:
            scalar, M_base = theta_matrix_closed_factored(field, base)
        else:
            scalar, M_base = CycloNum.from_rational(1), theta_matrix(field, base)
        check_sigma(base, scalar, M_base, inner_sum_closed if use_closed else inner_sum_direct)
        for g in gammas:
            # M(base*g) = M(base) M(g): the homomorphism is pinned exactly
            # by separate tests, so translates reuse it for speed; gamma's
            # theta matrix is monomial (c is 0 or D), keeping M light
            M_g = theta_matrix_closed(field, g) if g.c > 0 else theta_matrix(field, g)
            M = mat_mul(M_base, M_g)
            check_sigma(base * g, scalar, M, inner_sum_direct)
    return {
        "D": field.D,
        "N": N,
        "triples_checked": triples,
        "failures": failures,
        "wall_time": time.monotonic() - t0,
    }
