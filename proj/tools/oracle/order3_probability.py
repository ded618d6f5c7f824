"""Exact probability, over all g in PGL2(q), that both h1 and h2 of the
order-3 construction have odd order, for a fixed Klein four-group <i, j> of
right-type involutions. Independent of the C++ library (reuses only the
field/matrix helpers of fingerprints.py).
"""
import sys

import fingerprints as fpm

fpm.MODULI[(3, 3)] = [1, 2, 0, 1]  # x^3 + 2x + 1, no roots over GF(3)


def main(p, k):
    F, elems, key = fpm.group("PGL2", p, k)
    q = p ** k
    one = (F.one(), F.zero(), F.zero(), F.one())
    ident = key(one)
    mul = lambda x, y: fpm.mat_mul(F, x, y)

    def inv(m):
        d = fpm.det(F, m)
        dinv = next(e for e in F.elems if F.mul(e, d) == F.one())
        return tuple(F.mul(dinv, e) for e in (m[3], F.neg(m[1]), F.neg(m[2]), m[0]))

    def power(x, n):
        r = one
        for _ in range(n):
            r = mul(r, x)
        return r

    def order(x):
        y, n = x, 1
        while key(y) != ident:
            y, n = mul(y, x), n + 1
        return n

    conj = lambda x, g: mul(mul(inv(g), x), g)
    torus = q - 1 if q % 4 == 1 else q + 1
    # Right type: the centralizer 2|T| contains an element of order |T|.
    def right_type(i):
        cent = [g for g in elems if key(mul(g, i)) == key(mul(i, g))]
        return any(order(g) == torus for g in cent), cent

    invols = [m for m in elems if order(m) == 2]
    for i in invols:
        ok, cent = right_type(i)
        if ok:
            break
    j = next(w for w in cent if order(w) == 2 and key(w) != key(i) and right_type(w)[0])
    kk = mul(i, j)
    both = first = 0
    for g in elems:
        h1 = mul(i, conj(j, g))
        m1 = order(h1)
        if m1 % 2 == 0:
            continue
        first += 1
        n1 = power(h1, (m1 + 1) // 2)
        s = conj(kk, mul(g, inv(n1)))
        h2 = mul(j, s)
        if order(h2) % 2 == 1:
            both += 1
    n = len(elems)
    print(f"q={q} |G|={n} P(h1 odd)={first / n:.4f} P(both odd)={both / n:.4f} "
          f"bound 1/2-1/2q={0.5 - 0.5 / q:.4f}")


if __name__ == "__main__":
    main(int(sys.argv[1]), int(sys.argv[2]))
