"""Dense sympy recomputations used to derive the frozen constants in the tests.

Independent of the package: crossed products of group algebras are rebuilt from
group data, and ranks are taken with sympy's exact Matrix.
"""

import itertools

import sympy


def group_crossed_product(G, B_table, action, sigma):
    """Structure constants of B#_σkG for a group G (Cayley table) acting by automorphisms.

    ``B_table[i][j]`` is a dict basis→coeff, ``action[g][b]`` likewise, ``sigma[g][h]``
    a dict over B; returns (mult(p, q) -> dict, dim).
    """
    n, db = len(G), len(B_table)

    def bmul(u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, z in B_table[i][j].items():
                    out[k] = out.get(k, 0) + x * y * z
        return out

    def act(g, v):
        out = {}
        for b, x in v.items():
            for k, y in action[g][b].items():
                out[k] = out.get(k, 0) + x * y
        return out

    def mult(p, q):
        (b, g), (c, h) = divmod(p, n), divmod(q, n)
        coeff = bmul(bmul({b: 1}, act(g, {c: 1})), sigma[g][h])
        return {k * n + G[g][h]: x for k, x in coeff.items() if x}

    return mult, db * n


def es_carrier_dim(G, B_table, action, sigma):
    """dim (A⊗A)^coH for A = B#_σkG with the diagonal coaction."""
    n, db = len(G), len(B_table)
    d = db * n
    # δ(b#g ⊗ c#h) = b#g ⊗ c#h ⊗ gh; coinvariant iff every term has gh = e
    e = next(i for i in range(n) if all(G[i][j] == j for j in range(n)))
    rows = []
    for p, q in itertools.product(range(d), repeat=2):
        g, h = p % n, q % n
        if G[g][h] != e:
            r = [0] * (d * d)
            r[p * d + q] = 1
            rows.append(r)
    M = sympy.Matrix(rows) if rows else sympy.zeros(1, d * d)
    return d * d - M.rank()
