#!/usr/bin/env python3
"""High-precision reference values frozen into the C++ test suites.

Every number printed here is computed independently of the C++ library with
mpmath at 60+ significant digits.  Re-run to regenerate:

    python3 tests/oracles/oracles.py
"""
from mpmath import mp, mpf, mpc, nstr, atan, pi, sqrt, exp, quad, log, findroot, sinh

mp.dps = 60


def qnum(n, q):
    return (q**n - q**-n) / (q - 1 / q)


def series(coef, x, nmax=4000):
    s, mx = mpf(0), mpf(0)
    for n in range(nmax):
        c = coef(n)
        if c == 0:
            continue
        t = c * x**n
        s += t
        mx = max(mx, abs(t))
        if n > 10 and abs(t) < mpf(10) ** (-55) * max(abs(s), 1):
            break
    return s, mx


def qfact(n, q):
    r = mpf(1)
    for k in range(1, n + 1):
        r *= qnum(k, q)
    return r


def eq(x, q):
    return series(lambda n: 1 / qfact(n, q), x)


def sinq(x, q):
    return series(lambda n: (-1) ** ((n - 1) // 2) / qfact(n, q) if n % 2 else 0, x)


def cosq(x, q):
    return series(lambda n: (-1) ** (n // 2) / qfact(n, q) if n % 2 == 0 else 0, x)


def barsin(x, q):
    return series(lambda n: (-1) ** ((n - 1) // 2) * q ** (-n * (n - 1) / mpf(2)) / qfact(n, q) if n % 2 else 0, x)


def barcos(x, q):
    return series(lambda n: (-1) ** (n // 2) * q ** (-n * (n - 1) / mpf(2)) / qfact(n, q) if n % 2 == 0 else 0, x)


def theta(x, q):
    p = q**-2
    s, k = mpf(0), 0
    while True:
        a = (1 - p) * p**k * x
        s += atan(a)
        if a < mpf(10) ** (-50):
            return s
        k += 1


def pi_q(nu, q):
    target = pi * nu
    lo, hi = target, target
    while theta(hi, q) < target:
        hi *= 2
    return findroot(lambda x: theta(x, q) - target, (lo, hi), solver="anderson")


def bcoef(q):
    p = q**-2
    u3 = (1 - p) ** 3 / (1 - p**3)
    b3 = u3 / 3
    b5 = -(1 - p) ** 5 / (1 - p**5) / 5 + u3**2 / 3
    b7 = (1 - p) ** 7 / (1 - p**7) / 7 - mpf(8) / 15 * (1 - p) ** 8 / ((1 - p**3) * (1 - p**5)) \
        + mpf(4) / 9 * (1 - p) ** 9 / (1 - p**3) ** 3
    return b3, b5, b7


def show(label, v, d=17):
    print(f"{label:50s} {nstr(v, d)}")


if __name__ == "__main__":
    q15 = mpf("1.5")
    show("e_q(-50), q=1.5", eq(mpf(-50), q15)[0])
    v, mx = sinq(mpf("5.28"), q15)
    show("sin_q(5.28), q=1.5", v)
    v, mx = barsin(mpf("5.28"), q15)
    show("barsin_q(5.28), q=1.5", v)
    show("barsin_q(5.28) peak term", mx)
    show("barcos_q(pi), q=1.2", barcos(pi, mpf("1.2"))[0])
    for qs in ["1.1", "1.5", "2"]:
        q = mpf(qs)
        for nu in [0.5, 1, 1.5, 2, 2.5, 3, 4, 5, 6]:
            show(f"pi_q({nu}), q={qs}", pi_q(nu, q))
    for qs in ["1.01", "1.2"]:
        q = mpf(qs)
        b3, b5, b7 = bcoef(q)
        for n in [1, 2, 3]:
            r = pi_q(n, q)
            x = pi * n
            s = x + b3 * x**3 + b5 * x**5 + b7 * x**7
            show(f"pi_q({n}) root, q={qs}", r)
            show(f"   series rel err", (s - r) / r, 5)
    show("b3(1.5)", bcoef(q15)[0])
    show("b5(1.5)", bcoef(q15)[1])
    show("b7(1.5)", bcoef(q15)[2])
    # Lagrange reversion check of b7 against direct series reversion
    q = q15
    p = q**-2
    a = {2 * k - 1: (-1) ** (k - 1) / mpf(2 * k - 1) * (1 - p) ** (2 * k - 1) / (1 - p ** (2 * k - 1)) for k in range(1, 5)}
    b7_rev = -a[7] + 8 * a[3] * a[5] - 12 * a[3] ** 3
    b7_typo = -a[7] + 4 * a[3] * a[5] - 12 * a[3] ** 3
    show("b7 series reversion (8 a3 a5)", b7_rev)
    show("b7 with coefficient 4 a3 a5 (for comparison)", b7_typo)
    for qs in ["1.00001", "1.5"]:
        q = mpf(qs)
        h = log(q)
        show(f"Gamma_q[1] regularized, q={qs}", h / sinh(h))
    # Gaussian overlap bound
    q = mpf("1.2")
    show("uncertainty bound (hbar=1), q=1.2", sqrt(2 / (1 + q * q)) / 2)
    # p_q spread of unit Gaussian: hbar^2 c^2 int |D psi|^2
    c = (q + 1) / (2 * q)
    lam = q - 1 / q
    psi = lambda x: pi ** mpf(-0.25) * exp(-x * x / 2)
    Dpsi = lambda x: (psi(q * x) - psi(x / q)) / (lam * x)
    p2 = 2 * quad(lambda x: Dpsi(x) ** 2, [0, 1, 5, mp.inf]) * c * c
    show("Delta p_q * Delta x, q=1.2", sqrt(p2) * sqrt(mpf(1) / 2))
