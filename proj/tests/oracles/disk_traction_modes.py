"""Interior traction (Neumann) eigenvalues of the oscillatory Stokes operator on the unit disk.

Stream function psi = (a J_n(kr) + c r^n) e^{i n theta}, u = curl-perp psi,
pressure -i k^2 c r^n e^{i n theta} for the harmonic part. Zero traction at r = 1
gives a 2x2 determinant (1x1 for n = 0). These are the spurious resonances a
double-layer representation sees on a domain with a unit-disk inclusion.
"""
import sys
import mpmath as mp

mp.mp.dps = 40


def traction(n, k, psi, p):
    # psi, p: functions of r (angular factor e^{i n theta} removed)
    ur = lambda r: -1j * n * psi(r) / r
    ut = lambda r: mp.diff(psi, r)
    tr = -p(1) + 2 * mp.diff(ur, 1)
    tt = mp.diff(lambda r: ut(r) / r, 1) + 1j * n * ur(1)
    return tr, tt


def det(n, k):
    a = traction(n, k, lambda r: mp.besselj(n, k * r), lambda r: 0)
    if n == 0:
        return mp.re(a[1])
    c = traction(n, k, lambda r: r**n, lambda r: -1j * k**2 * r**n)
    d = a[0] * c[1] - a[1] * c[0]
    # d is real or purely imaginary for fixed n; return the dominant real-valued part
    return mp.re(d) if abs(mp.re(d)) >= abs(mp.im(d)) else mp.im(d)


def roots(f, a, b, step=mp.mpf("0.002")):
    out = []
    x, fx = mp.mpf(a), f(mp.mpf(a))
    while x < b:
        y = min(x + step, mp.mpf(b))
        fy = f(y)
        if fx * fy < 0:
            out.append(mp.findroot(f, (x, y), solver="anderson"))
        x, fx = y, fy
    return out


def main():
    a, b = mp.mpf(sys.argv[1]), mp.mpf(sys.argv[2])
    nmax = int(sys.argv[3]) if len(sys.argv) > 3 else 25
    found = []
    for n in range(0, nmax + 1):
        found += [(k, n) for k in roots(lambda k: det(n, k), a, b)]
    for k, n in sorted(found):
        print(mp.nstr(k, 17), n)


if __name__ == "__main__":
    main()
