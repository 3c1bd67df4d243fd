"""Independent reference values frozen into the C++ tests.

Uses the closed-form scattering data of the sech datum A sech(x):
  a(k) = Gamma(1/2 - ik)^2 / (Gamma(1/2 - ik + A) Gamma(1/2 - ik - A)),
  b(k) = sin(pi A) sech(pi k),  r = conj(b) / a,
and evaluates the two-cosine leading order with mpmath quadrature.
Run: python3 tests/oracles/generate.py
"""
import mpmath as mp

mp.mp.dps = 40
A = mp.mpf("0.3")


def a_exact(k):
    z = mp.mpf("0.5") - 1j * k
    return mp.gamma(z) ** 2 / (mp.gamma(z + A) * mp.gamma(z - A))


def b_exact(k):
    return mp.sin(mp.pi * A) * mp.sech(mp.pi * k)


def r_exact(k):
    return mp.conj(b_exact(k)) / a_exact(k)


def one_plus_r2(k):
    return 1 / (1 - (mp.sin(mp.pi * A) * mp.sech(mp.pi * k)) ** 2)


def nu(k):
    return mp.log(one_plus_r2(k)) / (2 * mp.pi)


def stationary(xi, al=1, be=1):
    d = mp.sqrt(144 * al**2 + 320 * be * xi)
    return mp.sqrt((12 * al - d) / (160 * be)), mp.sqrt((12 * al + d) / (160 * be))


def chi_integral(k1, k2, kj):
    f = lambda s: mp.log(one_plus_r2(s) / one_plus_r2(kj)) * (1 / (s - kj) - 1 / (s + kj))
    return mp.quad(f, [k1, (k1 + k2) / 2, k2])


def leading_order(x, t, al=1, be=1):
    xi = mp.mpf(x) / t
    k1, k2 = stationary(xi, al, be)
    root = 3 * al * mp.sqrt(1 + 20 * be * xi / (9 * al**2))
    n1, n2 = nu(k1), nu(k2)
    I1, I2 = chi_integral(k1, k2, k1), chi_integral(k1, k2, k2)
    phia = (-mp.pi / 4 - mp.arg(r_exact(k1)) + mp.arg(mp.gamma(1j * n1))
            + 2 * n1 * mp.log((k1 + k2) / (2 * k1)) - I1 / mp.pi)
    phib = (mp.pi / 4 - mp.arg(r_exact(k2)) - mp.arg(mp.gamma(1j * n2))
            + 2 * n2 * mp.log(2 * k2 / (k1 + k2)) - I2 / mp.pi)
    gap = 16 * t * (k2 - k1) ** 2
    ph1 = 16 * t * k1**3 * (8 * be * k1**2 - al) - n1 * mp.log(gap * k1 * root) + phia
    ph2 = 16 * t * k2**3 * (8 * be * k2**2 - al) + n2 * mp.log(gap * k2 * root) + phib
    amp1 = mp.sqrt(n1 / (k1 * root))
    amp2 = mp.sqrt(n2 / (k2 * root))
    return -(amp1 * mp.cos(ph1) + amp2 * mp.cos(ph2)) / mp.sqrt(t), (k1, k2, n1, n2, I1, I2, phia, phib)


if __name__ == "__main__":
    for k in ["0.7", "-1.3"]:
        print("a(%s) =" % k, mp.nstr(a_exact(mp.mpf(k)), 17))
    kc = mp.mpc("0.7", "0.4")
    print("a(0.7+0.4i) =", mp.nstr(a_exact(kc), 17))
    print("r(0) =", mp.nstr(r_exact(0), 17))
    print("k1,k2(-0.2) =", [mp.nstr(v, 17) for v in stationary(mp.mpf("-0.2"))])
    u, parts = leading_order(-20, 100)
    print("u_lead(-20,100) =", mp.nstr(u, 17))
    print("parts:", [mp.nstr(v, 17) for v in parts])
    for z in ["0.125375", "0.5", "2"]:
        print("argGamma(i %s) =" % z, mp.nstr(mp.arg(mp.gamma(1j * mp.mpf(z))), 17))
    print("lnGamma(2.5-1.5i) =", mp.nstr(mp.loggamma(mp.mpc(2.5, -1.5)), 17))
    print("lnGamma(-0.7+0.2i) =", mp.nstr(mp.loggamma(mp.mpc(-0.7, 0.2)), 17))


def painleve_linear(y):
    """lim_{s->0} u_p(s, y)/s = (1/pi) int_0^inf cos(8z^5/5 + 2yz) dz (decaying solution of
    g'''' + 4yg = 0), evaluated on the steepest ray z = r e^{i pi/10}."""
    w = mp.exp(1j * mp.pi / 10)
    f = lambda r: mp.exp(-mp.mpf(8) / 5 * r**5 + 2j * y * r * w)
    return mp.re(w * mp.quad(f, [0, 1, 2, mp.inf])) / mp.pi


if __name__ == "__main__":
    for y in ["1", "-0.5", "2"]:
        print("u_p/s (s->0) at y=%s =" % y, mp.nstr(painleve_linear(mp.mpf(y)), 17))
