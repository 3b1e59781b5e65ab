#!/usr/bin/env python3
"""Generate the 20-point endpoint-log quadrature table used by src/quadrature_rules.cpp.

Nodes are squared Gauss-Legendre nodes on [0, 1]; weights make the rule exact
for P_j(2x-1) and P_j(2x-1)*log(x), j = 0..9.  Solved in 60-digit arithmetic.
"""
import mpmath as mp

mp.mp.dps = 60
N, M = 20, 10


def gauss_legendre(n):
    nodes = []
    for i in range(1, n + 1):
        x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (n + mp.mpf(1) / 2))
        for _ in range(100):
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < mp.mpf(10) ** -55:
                break
        nodes.append(x)
    return sorted(nodes)


u = gauss_legendre(N)
xs = [((v + 1) / 2) ** 2 for v in u]
A = mp.matrix(2 * M, N)
b = mp.matrix(2 * M, 1)
for j in range(M):
    for i in range(N):
        A[j, i] = mp.legendre(j, 2 * xs[i] - 1)
        A[M + j, i] = A[j, i] * mp.log(xs[i])
    b[j] = 1 if j == 0 else 0
    b[M + j] = -1 if j == 0 else mp.mpf((-1) ** (j + 1)) / (j * (j + 1))
w = mp.lu_solve(A, b)
print("// generated by tools/gen_log_rule.py")
print("constexpr std::array<double, %d> kLogNodes = {" % N)
for x in xs:
    print("    %s," % mp.nstr(x, 20, min_fixed=-1, max_fixed=1))
print("};")
print("constexpr std::array<double, %d> kLogWeights = {" % N)
for v in w:
    print("    %s," % mp.nstr(v, 20, min_fixed=-1, max_fixed=1))
print("};")
