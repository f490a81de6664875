"""Z(sigma) on the acceptance schedule X_k = 2^(-3-k) for the three presets."""
from zeta_quadrant_impl import make, mp

for name, (a, b, q, p) in {"sup": (0, 2, 2, mp.mpf(2)), "crit": (0, 2, 2, mp.mpf(1)),
                           "sub": (1, 2, 2, mp.mpf(1) / 4)}.items():
    Z = make(a, b, q, p, mp.mpf(1) / 2, mp.mpf(1) / 2)
    for k in range(12):
        X = mp.mpf(2) ** (-3 - k)
        print(name, k, mp.nstr(Z((X - 1) / b), 17))
