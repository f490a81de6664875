"""Weighted zeta values by nested mpmath quadrature (oracle for test_zeta).

Both variables are substituted as x = v^16, y = u^16 so the endpoint power
singularities become smooth before tanh-sinh sees them.
"""
from mpmath import mp, mpf, exp, quad, linspace

mp.dps = 20
M = 16


def bump(R, u):
    t2 = (u / R) ** 2
    return exp(1 + 1 / (t2 - 1)) if t2 < 1 else mpf(0)


def weighted(a, b, q, p, sigma, R1=mpf(1) / 2, R2=mpf(1) / 2, M=M):
    U = R2 ** (mpf(1) / M)

    def inner(v):
        x = v**M
        if x == 0:
            return mpf(0)
        e = exp(-1 / (q * x**p))
        E = e**q

        def g(u):
            y = u**M
            if y == 0:
                return mpf(0)
            return (M * u ** (M - 1) * y ** ((b - q) * sigma) * (y**q + E) ** sigma
                    * bump(R2, y))

        pts = [mpf(0)] + [w ** (mpf(1) / M) for w in (e / 10, e, 10 * e) if 0 < w < R2]
        pts += list(linspace(U / 2, U, 5))
        pts = sorted(set(pts))
        return (quad(g, pts, maxdegree=8) * M * v ** (M - 1) * x ** (a * sigma)
                * bump(R1, x))

    V = R1 ** (mpf(1) / M)
    vs = sorted(set([mpf(0)] + list(linspace(V / 2, V, 9))))
    return 4 * quad(inner, vs, maxdegree=8)


if __name__ == "__main__":
    s = (mpf(1) / 8 - 1) / 2
    for a, b, q, p in [(0, 2, 2, mpf(2)), (0, 2, 2, mpf(1)), (1, 2, 2, mpf(1) / 4)]:
        print(a, b, q, p, mp.nstr(weighted(a, b, q, p, s), 17), flush=True)
