#!/usr/bin/env python3
"""Reference run of the K(u) example function with A=-1, C=1, mu=nu=0.3.

Mirrors the greedy Q0/Q1/Q2 construction, then reports realized class
counts vs targets, S_u/(lnln n)^u ratios, and the sup distance between the
condition profile F_n and K(u) on the 481-point grid over [-1.2, 1.2].
The profile variance and sup distance frozen in test_limitlaws.cpp come
from this script.
"""
import math

import numpy as np

A, C, MU, NU = -1.0, 1.0, 0.3, 0.3
COEF = 2.0 * (1.0 + MU * (-1.0) - NU * 1.0)  # 2 (1 + mu sgn A - nu sgn C)


def sieve(n):
    mark = np.ones(n + 1, dtype=bool)
    mark[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if mark[i]:
            mark[i * i :: i] = False
    return np.nonzero(mark)[0].astype(np.int64)


def greedy_classes(primes):
    labels = np.zeros(len(primes), dtype=np.int8)
    c1 = c2 = 0
    for i, p in enumerate(primes):
        if p < 16:
            continue
        lp = math.log(p)
        target = 2 * p / (lp * math.log(lp))  # shared by Q1 and Q2 up to mu, nu
        if c1 < MU * target / (A * A):
            labels[i] = 1
            c1 += 1
        elif c2 < NU * target / (C * C):
            labels[i] = 2
            c2 += 1
    return labels, c1, c2


def fvalue(p, label):
    if p < 16:
        return 0.0
    llp = math.log(math.log(p))
    if label == 1:
        return A * llp
    if label == 2:
        return C * llp
    return math.sqrt(COEF * llp)


def K(u):
    if u < A:
        return 0.0
    if u < 0:
        return MU * (1 - u * u / (A * A))
    if u == 0:
        return 1 - NU
    if u <= C:
        return NU * u * u / (C * C) + 1 - NU
    return 1.0


def main():
    n_top = 10**6
    primes = sieve(n_top)
    labels, c1, c2 = greedy_classes(primes)
    fv = np.array([fvalue(int(p), int(lab)) for p, lab in zip(primes, labels)])

    lnln = math.log(math.log(n_top))
    target = 2 * MU * n_top / (math.log(n_top) * lnln)
    print("Q1=%d Q2=%d target=%.1f" % (c1, c2, target))

    for n in (10**4, 10**5, 10**6):
        sel = primes <= n
        ll = math.log(math.log(n))
        for u in (1, 2, 3):
            s = math.fsum((fv[sel] ** u) / primes[sel])
            print("n=%-8d u=%d S_u/(lnln n)^u = %.9f" % (n, u, s / ll**u))

    D = math.fsum((fv**2) / primes)
    rD = math.sqrt(D)
    print("D(1e6) = %.9f" % D)

    pairs = sorted(zip(fv, (fv**2) / primes))
    fs = [p[0] for p in pairs]
    ws = [p[1] for p in pairs]
    sup, acc, j = 0.0, 0.0, 0
    for i in range(481):
        u = -1.2 + 2.4 * i / 480.0
        threshold = u * rD
        while j < len(fs) and fs[j] < threshold:
            acc += ws[j]
            j += 1
        sup = max(sup, abs(acc / D - K(u)))
    print("sup |F_n - K| on [-1.2, 1.2] x 481 = %.9f" % sup)


if __name__ == "__main__":
    main()
