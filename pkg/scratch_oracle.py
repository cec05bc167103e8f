"""Scratch oracle runs (mpmath / quadrature / finite differences).

Independent of the package implementation; used to freeze expected values
into tests. Deleted before final commit? No: kept out of the package; values
are copied into tests with a comment naming this route.
"""
import mpmath as mp

mp.mp.dps = 40

A, B, C, M = mp.mpf(0), mp.mpf(1), mp.mpf(0), mp.mpf("0.1")
MU = 1 - A**2
Q = B * M / (2 * MU)


def D(x):
    return mp.sqrt(mp.pi) + (mp.e**Q - 1) * (mp.sqrt(mp.pi) / 2) * mp.erfc(x / (2 * mp.sqrt(MU)))


def chi_star(x):
    return mp.sqrt(MU) / B * (mp.e**Q - 1) * mp.e**(-x**2 / (4 * MU)) / D(x)


def eta_star_closed(x):
    return mp.e**Q * mp.sqrt(mp.pi) / D(x)


def eta_star_quad(x):
    # definition route: exp((b/2mu) * int_{-inf}^x chi*)
    s = mp.quad(chi_star, [-mp.inf, x])
    return mp.e**(B / (2 * MU) * s)


def V_star_closed(x):
    return (B * chi_star(x) - x) * eta_star_closed(x) * mp.e**(-x**2 / (4 * MU)) / (4 * mp.sqrt(mp.pi) * MU**mp.mpf("1.5"))


def V_star_fd(x, h=mp.mpf("1e-8")):
    f = lambda y: eta_star_closed(y) * mp.e**(-y**2 / (4 * MU))
    return (f(x + h) - f(x - h)) / (2 * h) / mp.sqrt(4 * mp.pi * MU)


print("chi_star(0)      =", mp.nstr(chi_star(0), 20))
print("chi_star(1.3)    =", mp.nstr(chi_star(mp.mpf("1.3")), 20))
print("eta_star(0) cl   =", mp.nstr(eta_star_closed(0), 20))
print("eta_star(0) quad =", mp.nstr(eta_star_quad(0), 20))
print("eta_star(2.pi) q =", mp.nstr(eta_star_quad(mp.mpf(2)), 20), " closed:", mp.nstr(eta_star_closed(mp.mpf(2)), 20))
print("eta limits       =", mp.nstr(eta_star_closed(-mp.mpf(60)), 20), mp.nstr(eta_star_closed(mp.mpf(60)), 20), " e^q =", mp.nstr(mp.e**Q, 20))
print("V*(0.7) closed   =", mp.nstr(V_star_closed(mp.mpf("0.7")), 20))
print("V*(0.7) fd       =", mp.nstr(V_star_fd(mp.mpf("0.7")), 20))
print("int chi*         =", mp.nstr(mp.quad(chi_star, [-mp.inf, 0, mp.inf]), 20))

d_int = mp.quad(lambda y: chi_star(y) ** 3 / eta_star_closed(y), [-mp.inf, 0, mp.inf])
print("d (a=0,b=1,M=.1) =", mp.nstr(d_int, 20))

# nu_tilde0 for gamma=1.5, c+=1, c-=0
g = mp.mpf("1.5")
cp, cm = mp.mpf(1), mp.mpf(0)
nu0 = mp.sqrt(MU) * (cp - cm) * mp.gamma((3 - g) / 2) + B * chi_star(0) * (cp + cm) / (2 - g) * mp.gamma(2 - g / 2)
print("nu0 (g=1.5,1,0)  =", mp.nstr(nu0, 20))
print("Gamma(0.75)      =", mp.nstr(mp.gamma(mp.mpf("0.75")), 20))
print("Gamma(1.25)      =", mp.nstr(mp.gamma(mp.mpf("1.25")), 20))

# centerline envelope for the sandwich, gamma<2:
#   r(t) -> eta*(0) * 2^{2-gamma} mu^{1-gamma/2} |nu0| / (4 sqrt(pi) mu^{3/2})
env = eta_star_closed(0) * 2 ** (2 - g) * MU ** (1 - g / 2) * abs(nu0) / (4 * mp.sqrt(mp.pi) * MU ** mp.mpf("1.5"))
print("sandwich env     =", mp.nstr(env, 20))

# Z(x,t) oracle by direct quadrature (gamma=1.5, c+=1, c-=0, same profile) at (x,t)=(0.0,4) and (1.5,4)
def eta_xt(x, t):
    return eta_star_closed((x - A * (1 + t)) / mp.sqrt(1 + t))

def chi_xt(x, t):
    return chi_star((x - A * (1 + t)) / mp.sqrt(1 + t)) / mp.sqrt(1 + t)

def G0(x, t):
    return mp.e**(-(x - A * t) ** 2 / (4 * MU * t)) / mp.sqrt(4 * mp.pi * MU * t)

def dxG0(x, t):
    return -(x - A * t) / (2 * MU * t) * G0(x, t)

def Z_point(x, t):
    def integrand(y):
        c = cp if y >= 0 else cm
        ker = dxG0(x - y, t) * eta_xt(x, t) + G0(x - y, t) * (B / (2 * MU)) * chi_xt(x, t) * eta_xt(x, t)
        return c * ker * (1 + abs(y)) ** (1 - g)
    return mp.quad(integrand, [-mp.inf, 0, x - A * t, mp.inf])

print("Z(0,4)   =", mp.nstr(Z_point(mp.mpf(0), mp.mpf(4)), 18))
print("Z(1.5,4) =", mp.nstr(Z_point(mp.mpf("1.5"), mp.mpf(4)), 18))
print("Z(0,64)  =", mp.nstr(Z_point(mp.mpf(0), mp.mpf(64)), 18))

# Gamma-identity spot values (j=1, gamma=1.75, mu=1, t=10)
j, gg, t = 1, mp.mpf("1.75"), mp.mpf(10)
lhs = mp.quad(lambda y: mp.e**(-y**2 / (4 * MU * t)) * y ** (j - gg), [0, 1, mp.inf])
rhs = 2 ** (j - gg) * (MU * t) ** ((j + 1 - gg) / 2) * mp.gamma((j + 1 - gg) / 2)
print("Gamma-identity lhs,rhs:", mp.nstr(lhs, 20), mp.nstr(rhs, 20))

# G-hat at a=0 near the branch point xi=1/2: lambda1=lambda2=-1/2
# G-hat(xi,t) = e^{-t/2} * t * sinch(delta t/2), delta = sqrt(1-4 xi^2)
for xi in [mp.mpf("0.5"), mp.mpf("0.5") + mp.mpf("1e-7"), mp.mpf("0.3")]:
    dl = mp.sqrt(1 - 4 * (xi**2 + A * 1j * xi))
    t = mp.mpf(3)
    if abs(dl) < mp.mpf("1e-30"):
        gh = t * mp.e**(-t / 2)
    else:
        l1 = (-1 + dl) / 2
        l2 = (-1 - dl) / 2
        gh = (mp.e**(l1 * t) - mp.e**(l2 * t)) / (l1 - l2)
    print(f"G-hat(xi={mp.nstr(xi,10)}, t=3) =", mp.nstr(gh, 18))
