"""Annulus r1 < r < r2 Stokes Dirichlet eigenvalues from the stream function.

Mode n >= 1: psi = (a J_n(kr) + b Y_n(kr) + c r^n + d r^-n) e^{i n theta} with
psi = psi_r = 0 on both circles (4x4 determinant; each root is double, +-n).
Mode n = 0: psi = a J_0(kr) + b Y_0(kr) with psi_r = 0 on both circles.
Prints the roots in a window, sorted, with their angular index.
"""
import sys
import mpmath as mp

mp.mp.dps = 40


def det_n(n, k, r1, r2):
    rows = []
    for r in (r1, r2):
        x = k * r
        rows.append([mp.besselj(n, x), mp.bessely(n, x), r**n, r**(-n)])
        rows.append([k * mp.besselj(n, x, 1), k * mp.bessely(n, x, 1), n * r**(n - 1), -n * r**(-n - 1)])
    return mp.det(mp.matrix(rows))


def det_0(k, r1, r2):
    return mp.besselj(1, k * r1) * mp.bessely(1, k * r2) - mp.besselj(1, k * r2) * mp.bessely(1, k * r1)


def roots(f, a, b, step=mp.mpf("0.002")):
    out = []
    x = mp.mpf(a)
    fx = f(x)
    while x < b:
        y = min(x + step, mp.mpf(b))
        fy = f(y)
        if fx == 0:
            out.append(x)
        elif fx * fy < 0:
            out.append(mp.findroot(f, (x, y), solver="anderson"))
        x, fx = y, fy
    return out


def main():
    r1, r2 = mp.mpf(sys.argv[1]), mp.mpf(sys.argv[2])
    a, b = mp.mpf(sys.argv[3]), mp.mpf(sys.argv[4])
    nmax = int(sys.argv[5]) if len(sys.argv) > 5 else 40
    found = [(k, 0) for k in roots(lambda k: det_0(k, r1, r2), a, b)]
    for n in range(1, nmax + 1):
        found += [(k, n) for k in roots(lambda k: det_n(n, k, r1, r2), a, b)]
    for k, n in sorted(found):
        print(mp.nstr(k, 17), n)


if __name__ == "__main__":
    main()
