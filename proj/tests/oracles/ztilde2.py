from mpmath import mp, mpf, exp, quad, log, inf
mp.dps=30
def zt2(a,b,q,p,r1,r2,lam,s):
    e=lambda x: exp(-1/(q*x**p))
    E=lambda x: exp(-1/x**p)
    k=(b-q)*s+1
    # inner y integral of y^{(b-q)s} over [0, min(e/lam, r2)]
    f=lambda x: x**(a*s)*E(x)**s*min(e(x)/lam,r2)**k/k
    # rho
    import mpmath
    rl = r1 if lam*r2>=e(r1) else (-1/(q*log(lam*r2)))**(1/p)
    pts=[mpf(0)]+[mpf(10)**(-j) for j in range(8,0,-1) if mpf(10)**(-j)<rl]+[rl]
    if rl<r1: pts+= [r1]
    return quad(f,pts)
s=mpf(-0.49)
for lam in [0.25,1,4]:
    print(lam, zt2(0,2,2,2,mpf(1)/2,mpf(1)/2,mpf(lam),s), zt2(0,2,2,1,mpf(1)/2,mpf(1)/2,mpf(lam),s), zt2(1,2,2,mpf(1)/4,mpf(1)/2,mpf(1)/2,mpf(lam),s))
