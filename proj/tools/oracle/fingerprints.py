"""Independent brute-force oracle for the small-group fingerprints used in tests.

Builds GF(p^k) from a hard-coded irreducible polynomial, enumerates the whole
of GL2 / SL2 directly (no generators), and reads element orders by repeated
multiplication. Shares no code with the C++ library.
"""
import itertools
import json
import sys
from collections import Counter

# Monic irreducible moduli, constant term first.
MODULI = {(3, 1): [0, 1], (5, 1): [0, 1], (7, 1): [0, 1], (3, 2): [1, 0, 1], (5, 2): [2, 0, 1]}


class GF:
    def __init__(self, p, k):
        self.p, self.k, self.mod = p, k, MODULI[(p, k)]
        self.elems = list(itertools.product(range(p), repeat=k))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * self.mod[i]) % p
        return tuple(prod[:k])

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)


def mat_mul(F, x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))


def det(F, x):
    a, b, c, d = x
    return F.add(F.mul(a, d), F.neg(F.mul(b, c)))


def projective_key(F, x, scalars):
    return min(tuple(F.mul(s, e) for e in x) for s in scalars)


def histogram(F, elems, key):
    ident = key((F.one(), F.zero(), F.zero(), F.one()))
    hist = Counter()
    for x in elems:
        y, n = x, 1
        while key(y) != ident:
            y, n = mat_mul(F, y, x), n + 1
        hist[n] += 1
    return dict(sorted(hist.items()))


def group(kind, p, k):
    F = GF(p, k)
    allm = [m for m in itertools.product(F.elems, repeat=4) if det(F, m) != F.zero()]
    nonzero = [e for e in F.elems if e != F.zero()]
    if kind == "SL2":
        elems = [m for m in allm if det(F, m) == F.one()]
        return F, elems, lambda m: m
    if kind == "PSL2":
        pm = [F.one(), F.neg(F.one())]
        reps = {projective_key(F, m, pm): m for m in allm if det(F, m) == F.one()}
        return F, list(reps.values()), lambda m: projective_key(F, m, pm)
    reps = {projective_key(F, m, nonzero): m for m in allm}
    return F, list(reps.values()), lambda m: projective_key(F, m, nonzero)


def fp(kind, p, k, subset=None):
    F, elems, key = group(kind, p, k)
    if subset:
        elems = subset(F, elems)
    return {"order": len(elems), "histogram": histogram(F, elems, key)}


def perm_fp(n, even):
    hist = Counter()
    for perm in itertools.permutations(range(n)):
        seen, order, swaps = set(), 1, 0
        for s in range(n):
            length, x = 0, s
            while x not in seen:
                seen.add(x)
                x, length = perm[x], length + 1
            if length:
                swaps += length - 1
                from math import lcm
                order = lcm(order, length)
        if even and swaps % 2:
            continue
        hist[order] += 1
    return {"order": sum(hist.values()), "histogram": dict(sorted(hist.items()))}


def q8_normalizer_sl2_7(F, elems):
    one = F.one()
    m1 = F.neg(one)
    a = (F.zero(), one, m1, F.zero())
    minus_i = (m1, F.zero(), F.zero(), m1)
    inv = lambda m: (m[3], F.neg(m[1]), F.neg(m[2]), m[0])
    a_inv = inv(a)
    b = next(g for g in elems if mat_mul(F, g, g) == minus_i and mat_mul(F, mat_mul(F, inv(g), a), g) == a_inv)
    q8 = {(F.one(), F.zero(), F.zero(), F.one())}
    frontier = list(q8)
    while frontier:
        x = frontier.pop()
        for g in (a, b):
            y = mat_mul(F, x, g)
            if y not in q8:
                q8.add(y)
                frontier.append(y)
    conj = lambda x, g: mat_mul(F, mat_mul(F, inv(g), x), g)
    return [g for g in elems if conj(a, g) in q8 and conj(b, g) in q8]


if __name__ == "__main__":
    out = {
        "Sym4": perm_fp(4, False),
        "Alt4": perm_fp(4, True),
        "PSL2(3)": fp("PSL2", 3, 1),
        "PSL2(5)": fp("PSL2", 5, 1),
        "PSL2(7)": fp("PSL2", 7, 1),
        "PGL2(3)": fp("PGL2", 3, 1),
        "PGL2(5)": fp("PGL2", 5, 1),
        "PGL2(7)": fp("PGL2", 7, 1),
        "PGL2(9)": fp("PGL2", 3, 2),
        "SL2(3)": fp("SL2", 3, 1),
        "SL2(5)": fp("SL2", 5, 1),
        "N(Q8) in SL2(7)": fp("SL2", 7, 1, q8_normalizer_sl2_7),
    }
    json.dump(out, sys.stdout, indent=1)
    print()
