"""Reference values for module-level tests."""
from mpmath import mp, mpf, exp, quad, log, sqrt, pi, inf

from weighted import weighted
from zeta_quadrant_impl import make

mp.dps = 30

# x^(-1/4) (1 - exp(-1/(2x))) on (0,1)
print("quad_1d", mp.nstr(quad(lambda x: x ** (-mpf(1) / 4) * (1 - exp(-1 / (2 * x))), [0, mpf(1) / 100, mpf(1) / 10, 1]), 20))
# tail of A for (0,2,2,2) from 1
print("quad_tail", mp.nstr(quad(lambda x: 1 - exp(-1 / (2 * x ** 2)), [1, 10, 100, inf]), 20))
# A closed forms
print("A_0222", mp.nstr(sqrt(pi / 2), 20), "A_0212", mp.nstr(sqrt(pi), 20))

# Z for (0,2,2,2), r=(1/2,1/2), sigma=-0.4
print("Z_0222_m04", mp.nstr(make(0, 2, 2, mpf(2), mpf(1) / 2, mpf(1) / 2)(mpf(-0.4)), 20))


def ztilde1(a, b, q, p, r1, r2, lam, s):
    X = b * s + 1
    e = lambda x: exp(-1 / (q * x ** p))
    rl = r1 if lam * r2 >= e(r1) else min(r1, (-1 / (q * log(lam * r2))) ** (1 / p))
    f = lambda x: x ** (a * s) * ((lam * r2) ** X - e(x) ** X)
    return lam ** (-X) / X * quad(f, [0, rl / 10, rl / 2, rl])


h = mpf(1) / 2
print("zt1_0222_l1_m045", mp.nstr(ztilde1(0, 2, 2, mpf(2), h, h, mpf(1), mpf(-0.45)), 20))
print("zt1_0221_l4_m049", mp.nstr(ztilde1(0, 2, 2, mpf(1), h, h, 2 / h, mpf(-0.49)), 20))

mp.dps = 20
print("weighted_0222_m049", mp.nstr(weighted(0, 2, 2, mpf(2), mpf(-0.49), M=64), 17), flush=True)
