#!/usr/bin/env python3
"""Independent oracle for exponential sums and L-polynomial valuations.

Brute-force S_r over F_{p^k} (own polynomial arithmetic), Newton identities
in Z[x]/Phi_p, and p-adic valuations via the norm: since p is totally
ramified in Q(zeta_p), ord_p(x) = v_p(Res(x, Phi_p)) / (p-1).
Prints values that are frozen into the C++ unit tests.
"""
import itertools
import sys
from fractions import Fraction

import sympy
from sympy import Poly, symbols, resultant

t = symbols("t")


def poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] = (res[i + j] + x * y) % p
    k = len(mod) - 1
    for i in range(len(res) - 1, k - 1, -1):
        c = res[i]
        if c:
            for j in range(k + 1):
                res[i - k + j] = (res[i - k + j] - c * mod[j]) % p
    out = res[:k] + [0] * max(0, k - len(res))
    return out[:k]


def is_irreducible(mod, p):
    k = len(mod) - 1
    # brute force: no monic factor of degree 1..k//2
    for deg in range(1, k // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=deg):
            g = list(coeffs) + [1]
            if Poly(list(reversed(mod)), t, modulus=p).rem(
                    Poly(list(reversed(g)), t, modulus=p)).is_zero:
                return False
    return True


def smallest_irreducible(p, k):
    if k == 1:
        return [0, 1]
    for low in itertools.product(range(p), repeat=k):
        # lexicographic low-to-high: c0 compared first
        mod = list(low) + [1]
        if is_irreducible(mod, p):
            return mod
    raise RuntimeError


def lex_low_to_high(p, k):
    # product() over (c0..c_{k-1}) with c0 most significant
    return smallest_irreducible(p, k)


def elements(p, k):
    for idx in range(p ** k):
        e = []
        for _ in range(k):
            e.append(idx % p)
            idx //= p
        yield e


def trace(x, mod, p):
    k = len(mod) - 1
    acc = [0] * k
    y = x[:]
    for _ in range(k):
        acc = [(a + b) % p for a, b in zip(acc, y)]
        # y <- y^p
        z = [1] + [0] * (k - 1)
        for _ in range(p):
            z = poly_mulmod(z, y, mod, p)
        y = z
    assert all(c == 0 for c in acc[1:])
    return acc[0]


def exp_sum_prime_coeffs(coeffs, p, r):
    """coeffs = (a1..ad) in F_p, sum over F_{p^r}."""
    mod = smallest_irreducible(p, r)
    k = r
    hist = [0] * p
    # linear trace: precompute traces of basis t^j
    basis_tr = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        basis_tr.append(trace(e, mod, p))
    for x in elements(p, k):
        val = [0] * k
        for a in reversed(coeffs):
            val = poly_mulmod(val, x, mod, p) if any(val) else [0] * k
            val[0] = (val[0] + a) % p
        val = poly_mulmod(val, x, mod, p)
        tr = sum(c * b for c, b in zip(val, basis_tr)) % p
        hist[tr] += 1
    return hist  # S = sum hist[t] zeta^t


def cyc_from_hist(hist, p):
    # reduce zeta^{p-1} = -(1 + ... + zeta^{p-2})
    c = hist[: p - 1]
    top = hist[p - 1]
    return [ci - top for ci in c]


def cyc_mul(a, b, p):
    res = [0] * (2 * p)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[(i + j) % p] += x * y
    top = res[p - 1]
    return [res[i] - top for i in range(p - 1)]


def norm_valuation(x, p):
    if all(c == 0 for c in x):
        return None
    phi = Poly([1] * p, t)
    px = Poly(list(reversed(x)), t)
    n = int(resultant(px.as_expr(), phi.as_expr(), t))
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return Fraction(v, p - 1)


def l_poly(coeffs, p):
    d = len(coeffs)
    S = [None] + [cyc_from_hist(exp_sum_prime_coeffs(coeffs, p, r), p)
                  for r in range(1, d)]
    M = [[1] + [0] * (p - 2)]
    for n in range(1, d):
        acc = [0] * (p - 1)
        for r in range(1, n + 1):
            prod = cyc_mul(S[r], M[n - r], p)
            acc = [a + b for a, b in zip(acc, prod)]
        assert all(a % n == 0 for a in acc)
        M.append([a // n for a in acc])
    return S, M


def exp_sum_ext(coeffs, p, m, r):
    """coeffs = (a1..ad), each a list of m residues in F_p[t]/(base modulus);
    sum over F_{q^r}, q = p^m, realised as F_{p^{mr}}."""
    base = smallest_irreducible(p, m)
    k = m * r
    mod = smallest_irreducible(p, k)
    # any root of the base modulus gives the same sum (Frobenius symmetry)
    rho = None
    for e in elements(p, k):
        acc = [0] * k
        power = [1] + [0] * (k - 1)
        for c in base:
            acc = [(a + c * b) % p for a, b in zip(acc, power)]
            power = poly_mulmod(power, e, mod, p)
        if not any(acc):
            rho = e
            break
    images = []
    for a in coeffs:
        img = [0] * k
        power = [1] + [0] * (k - 1)
        for c in a:
            img = [(x + c * y) % p for x, y in zip(img, power)]
            power = poly_mulmod(power, rho, mod, p)
        images.append(img)
    basis_tr = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        basis_tr.append(trace(e, mod, p))
    hist = [0] * p
    for x in elements(p, k):
        val = [0] * k
        for a in reversed(images):
            val = poly_mulmod(val, x, mod, p) if any(val) else [0] * k
            val = [(u + w) % p for u, w in zip(val, a)]
        val = poly_mulmod(val, x, mod, p)
        tr = sum(c * b for c, b in zip(val, basis_tr)) % p
        hist[tr] += 1
    return cyc_from_hist(hist, p)


def l_poly_ext(coeffs, p, m):
    d = len(coeffs)
    S = [None] + [exp_sum_ext(coeffs, p, m, r) for r in range(1, d)]
    M = [[1] + [0] * (p - 2)]
    for n in range(1, d):
        acc = [0] * (p - 1)
        for r in range(1, n + 1):
            prod = cyc_mul(S[r], M[n - r], p)
            acc = [a + b for a, b in zip(acc, prod)]
        assert all(a % n == 0 for a in acc)
        M.append([a // n for a in acc])
    return S, M


def main():
    cases = [((0, 1), 5), ((0, 0, 1), 5), ((1, 0, 1), 7), ((0, 0, 0, 1), 5),
             ((1, 0, 0, 1), 5), ((1, 0, 0, 1), 7), ((1, 0, 1), 5),
             ((1, 0, 1), 11), ((2, 3, 1), 11), ((1, 2, 0, 3, 1), 7)]
    for coeffs, p in cases:
        S, M = l_poly(list(coeffs), p)
        vals = [norm_valuation(m, p) for m in M[1:]]
        print(f"f={coeffs} p={p}")
        for r in range(1, len(S)):
            print(f"  S_{r} = {S[r]}")
        for n in range(1, len(M)):
            print(f"  M_{n} = {M[n]}  ord = {vals[n-1]}")
    ext_cases = [(((0, 0), (0, 1)), 3, 2), (((0, 1), (0, 0), (1, 0)), 5, 2)]
    for coeffs, p, m in ext_cases:
        S, M = l_poly_ext([list(c) for c in coeffs], p, m)
        print(f"f={coeffs} over F_{p}^{m}")
        for r in range(1, len(S)):
            print(f"  S_{r} = {S[r]}")
        for n in range(1, len(M)):
            v = norm_valuation(M[n], p)
            print(f"  M_{n} = {M[n]}  ord_p = {v}  ord_q = {None if v is None else v / m}")
    print("smallest irreducible (3,2):", smallest_irreducible(3, 2))
    print("smallest irreducible (5,2):", smallest_irreducible(5, 2))
    print("smallest irreducible (3,3):", smallest_irreducible(3, 3))
    print("smallest irreducible (2,4)... skipped; (7,3):", smallest_irreducible(7, 3))


if __name__ == "__main__":
    main()
