import mpmath as mp
mp.mp.dps = 20
def make(a,b,q,p,r1,r2):
    def Z(sig):
        X = b*sig+1
        I0 = mp.quad(lambda t: t**((b-q)*sig)*(1+t**q)**sig, [0,1])
        W = mp.quad(lambda u: u**(-b*sig-2)*((1+u**q)**sig-1), [0,1])
        def tailW(T):
            if T>=2:
                s=mp.mpf(0); k=1
                while True:
                    term = mp.binomial(sig,k)*T**(X-q*k)/(q*k-X)
                    s+=term
                    if abs(term)<mp.mpf(10)**-22*abs(s): break
                    k+=1
                return s
            return W - mp.quad(lambda t: t**(b*sig)*((1+t**-q)**sig-1), [1,T])
        def inner(x):
            le = -1/(q*x**p)
            e = mp.exp(le)
            if e >= r2:
                T = r2/e
                return e**X*mp.quad(lambda t: t**((b-q)*sig)*(1+t**q)**sig,[0,T])
            T = r2/e
            eX = mp.exp(X*le)
            return (mp.expm1(X*mp.log(r2))-mp.expm1(X*le))/X + eX*(I0+W-tailW(T))
        xt = (X/q)**(mp.mpf(1)/p)
        pts = [0]+[xt*f for f in (0.01,0.1,1,10,100) if xt*f<r1]+[r1]
        return mp.quad(lambda x: x**(a*sig)*inner(x), pts)
    return Z
import sys
