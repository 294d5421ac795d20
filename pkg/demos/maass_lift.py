"""From a plus-space form to degree-2 Hermitian Fourier coefficients.

Starting from the weight-7 Eisenstein series in the plus space at D = 3,
this demo extracts the single-variable coefficient function alpha, shows
the round trip back to the plus-space coefficients is exact, and then
tabulates the divisor-sum lift c(T) for small Hermitian matrices T.  The
value c(T) depends on T only through the content eps(T) and D*det(T).

Run:  python3 demos/maass_lift.py
"""

from hermlift import QuadField
from hermlift.lift import (HermitianCoeffKey, epsilon_T, maass_coeff,
                           plus_coeff_from_alpha, special_jacobi_alpha)
from hermlift.plusform import eisenstein_star

D, k, N = 3, 8, 1
f = QuadField(D)
g = eisenstein_star(f, k, 40)

print(f"plus-space Eisenstein series, weight {k - 1}, D = {D}:")
print("  a_l for l = 0..11:", [str(g.coeffs[l]) for l in range(12)])

alpha = special_jacobi_alpha(f, N, g)
for ell in range(40):
    c = g.coeffs[ell]
    if c is not None:
        assert (plus_coeff_from_alpha(f, N, alpha, ell) - c).is_zero()
print("round trip a_l -> alpha -> a_l is exact on every stored coefficient.")

print("\nlifted coefficients c(T) for T = [[l, t], [conj(t), m]]:")
print(f"{'l':>3} {'m':>3} {'t1':>3} {'t2':>3} {'eps':>4} {'D*det':>6}   c(T)")
# keep D*det(T) off the multiples of D, where the Eisenstein coefficient
# (hence alpha) is not pinned down by the plus-space structure
for (ell, m, t1, t2) in [(1, 1, 1, 0), (1, 2, 1, 0), (2, 1, 1, 0),
                         (2, 2, 2, 0), (2, 2, 1, 0), (2, 4, 2, 0)]:
    key = HermitianCoeffKey(f, ell, m, t1, t2)
    if key.ddet > alpha.bound:
        continue
    c = maass_coeff(f, N, k, alpha, key)
    print(f"{ell:>3} {m:>3} {t1:>3} {t2:>3} {epsilon_T(key):>4} "
          f"{key.ddet:>6}   {c}")

k1 = HermitianCoeffKey(f, 2, 2, 2, 0)
k2 = HermitianCoeffKey(f, 2, 2, 0, 2)
assert maass_coeff(f, N, k, alpha, k1) == maass_coeff(f, N, k, alpha, k2)
print("\nkeys with equal (eps, D*det) share the same coefficient, as they must.")
