"""High-precision reference values frozen into the C++ test suites.

Run with `python3 tests/oracles/generate_oracles.py`. Every value is computed
with mpmath at 50 digits, independently of the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 50


def xi(s):
    # s(s-1) pi^{-s/2} Gamma(s/2) zeta(s); limits at s = 0, 1 taken by mpmath.
    s = mp.mpmathify(s)
    if s == 1 or s == 0:
        return mp.mpf(1)
    if mp.re(s) < 0.5:
        return xi(1 - s)
    return s * (s - 1) * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


def theta_kernel(x):
    return 2 * mp.pi * (2 * mp.pi * x**4 - 3 * x**2) * mp.exp(-mp.pi * x**2)


def theta_sum(x):
    return mp.nsum(lambda n: theta_kernel(n * x), [1, mp.inf])


def xi_theta(s):
    s = mp.mpmathify(s)
    g = lambda x: theta_sum(x) * (x ** (s - 0.5) + x ** (0.5 - s)) * x ** (-0.5)
    return 2 * mp.quad(g, [1, 2, 4, mp.inf])


def c_const(sig):
    # Drift constant of the Gamma law's Levy-Khintchine form. Differentiating
    # log Gamma(sig - it) at t = 0 gives C = -digamma(sig) - int_1^inf x nu(x) dx,
    # which avoids the 1/x cancellation that defeats tanh-sinh near 0.
    tail = mp.nsum(lambda k: mp.exp(-(sig + k)) / (sig + k), [0, mp.inf])
    return -mp.digamma(sig) - tail


def c_const_quad(sig):
    # Same constant by quadrature of the displayed integral, with the
    # integrand rewritten so that no 1/x terms cancel.
    def g(x):
        h = 1 / (-mp.expm1(-x)) - 1 / x if x > mp.mpf("1e-10") else mp.mpf(0.5) + x / 12
        return mp.exp(-x) * mp.expm1((1 - sig) * x) / x + mp.exp(-sig * x) * h
    with mp.workdps(60):
        return mp.quad(g, [0, 0.25, 1]) - mp.e1(1)


def show(name, v):
    if isinstance(v, mp.mpc):
        print(f"{name}: re={mp.nstr(v.real, 20)} im={mp.nstr(v.imag, 20)}")
    else:
        print(f"{name}: {mp.nstr(v, 20)}")


show("loggamma(2-i)", mp.loggamma(mp.mpc(2, -1)))
show("loggamma(-3.5+7i)", mp.loggamma(mp.mpc(-3.5, 7)))
show("loggamma(0.25+150i)", mp.loggamma(mp.mpc(0.25, 150)))
show("zeta(2-i)", mp.zeta(mp.mpc(2, -1)))
show("zeta(0.5+100i)", mp.zeta(mp.mpc(0.5, 100)))
show("zeta(-2.5+30i)", mp.zeta(mp.mpc(-2.5, 30)))
show("zeta(0.5+5000i)", mp.zeta(mp.mpc(0.5, 5000)))
show("xi(1/2)", xi(0.5))
show("xi(0.3+7i)", xi(mp.mpc(0.3, 7)))
show("xi(-3.5+20i)", xi(mp.mpc(-3.5, 20)))
show("xi(6+45i)", xi(mp.mpc(6, 45)))
show("xi(-2)", xi(-2))
show("xi_theta(2) [normalization check]", xi_theta(2))
show("xi_theta(1/2)", xi_theta(0.5))
show("sum f(n)", theta_sum(1))
show("density sigma=2 y=0", 2 * theta_sum(1) / xi(2))
show("theta_kernel(1)", theta_kernel(1))
for k in (1, 2, 3):
    show(f"gamma_{k}", mp.zetazero(k).imag)
show("gamma_29", mp.zetazero(29).imag)
show("gamma_30", mp.zetazero(30).imag)
show("gamma_100", mp.zetazero(100).imag)
show("gamma_10000", mp.zetazero(10000).imag)
for T in (100, 1000, 10000):
    show(f"nzeros({T})", mp.nzeros(T))
    show(f"theta/pi+1 at {T}", mp.siegeltheta(T) / mp.pi + 1)
show("Z(20)", mp.siegelz(20))
show("Z(22)", mp.siegelz(22))
show("Z(0)", mp.siegelz(0))
show("C(1)", c_const(1))
show("C(1) by quadrature", c_const_quad(1))
show("C(0.25)", c_const(0.25))
show("C(0.25) by quadrature", c_const_quad(0.25))
sig = mp.mpf(2)
lam = (mp.exp(-sig / 2) - 1) / sig + (mp.exp((1 - sig) / 2) - 1) / (sig - 1) + mp.log(mp.pi) / 2 \
    + c_const(sig / 2) / 2
show("lambda_2 (drift, sigma=2)", lam)
lam_star_plus = (1 - mp.exp(-sig / 2)) / sig + mp.log(mp.pi) / 2 + c_const(sig / 2) / 2
lam_star_fixed = (mp.exp(-sig / 2) - 1) / sig + mp.log(mp.pi) / 2 + c_const(sig / 2) / 2
show("lambda*_2 with +(1-e^{-sigma/2})/sigma", lam_star_plus)
show("lambda*_2 sign-corrected", lam_star_fixed)
# Xi*_2(t) derivative at 0 equals i * E[Y*]; compare mean from direct CF.
h = mp.mpf("1e-20")
mean = (mp.log(xi(2 - 1j * h) / xi(2)) / (1j * h))
show("d/dt log Xi_2 at 0 / i (mean of Y)", mean)

# exp_factor_log quadrature oracle: alpha = 0.3+2i, z = 1.7
al = mp.mpc(0.3, 2)
z = mp.mpf(1.7)
q = mp.quad(lambda x: (mp.exp(1j * z * x) - 1) / x * mp.exp(-al * x), [0, 1, 5, 20, mp.inf])
show("int (e^{izx}-1) e^{-alpha x}/x", q)
show("log(alpha/(alpha - i z))", mp.log(al / (al - 1j * z)))

# phi_rho quadrature: sigma=1, gamma=14.134725, t=2
g = mp.mpf("14.134725")
c = mp.mpf(0.5)
q = -2 * mp.quadosc(lambda x: (mp.exp(2j * x) - 1) * mp.cos(g * x) * mp.exp(-c * x) / x,
                    [0, mp.inf], omega=g)
show("phi quadrature sigma=1 t=2", q)
cf = ((c - 1j * g - 2j) / (c - 1j * g)) * ((c + 1j * g - 2j) / (c + 1j * g))
show("phi closed form sigma=1 t=2", mp.log(cf))

show("log(zeta(2-i)/zeta(2))", mp.log(mp.zeta(mp.mpc(2, -1)) / mp.zeta(2)))
show("log(zeta(3-7i)/zeta(3))", mp.log(mp.zeta(mp.mpc(3, -7)) / mp.zeta(3)))
show("Xi_2(3)", xi(mp.mpc(2, -3)) / xi(2))
show("Xi_2(5)", xi(mp.mpc(2, -5)) / xi(2))
show("Xi_0.75(5)", xi(mp.mpc(0.75, -5)) / xi(0.75))
show("xi(0.75)", xi(0.75))
show("xi(0.25)", xi(0.25))
show("xi(-1)", xi(-1))
show("log G_2(1)", mp.loggamma(2 - 1j) - mp.loggamma(2))
