from mpmath import mp, mpf, exp, quad, hyp2f1, log
mp.dps=30
s=mpf(-0.49); r1=r2=mpf(1)/2; q=2; p=2
e=lambda x: exp(-1/(q*x**p))
for lam in [mpf(1)/4,1,4]:
    def f(x):
        ex=e(x); m=min(ex/lam,r2); T=m/ex
        return ex**(2*s+1)*T*hyp2f1(-s,mpf(1)/2,mpf(3)/2,-T*T)
    rl=(-1/(q*log(lam*r2)))**(1/p) if lam*r2<e(r1) else r1
    pts=[mpf(0)]+[mpf(10)**-j for j in (3,2)]+[mpf(0.05),mpf(0.1),mpf(0.2),rl,r1]
    pts=sorted(set(pts))
    print(lam, quad(f,pts))
