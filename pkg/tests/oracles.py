"""Reference implementations that share no code with the package.

Field elements are coefficient lists; subspaces of F_2^n are spans of
bitmask vectors.  Slow, but simple enough to trust.
"""

def poly_mulmod(a, b, mod, p):
    n = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus from the top
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for t in range(n + 1):
                prod[k - n + t] = (prod[k - n + t] - c * mod[t]) % p
    out = prod[:n] + [0] * max(0, n - len(prod))
    return out


def alpha_powers(p, n, mod):
    """Coefficient tuples of x^0, x^1, ... up to the first repeat of 1."""
    one = [1] + [0] * (n - 1)
    x = [0, 1] + [0] * (n - 2)
    cur, out = one, []
    while True:
        out.append(tuple(cur))
        cur = poly_mulmod(cur, x, mod, p)
        if cur == one:
            return out


def vec_add(u, v, p):
    return tuple((a + b) % p for a, b in zip(u, v))


def subspaces_3_of_f2(n):
    """All 3-dimensional subspaces of F_2^n as frozensets of nonzero bitmasks."""
    seen = set()
    vecs = range(1, 2**n)
    for a in vecs:
        for b in vecs:
            if b <= a:
                continue
            ab = a ^ b
            for c in vecs:
                if c <= b or c in (ab,):
                    continue
                span = frozenset((a, b, c, ab, a ^ c, b ^ c, ab ^ c))
                if len(span) == 7 and 0 not in span:
                    seen.add(span)
    return seen


def max_clique_networkx(vertex_count, edges):
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(vertex_count))
    g.add_edges_from(edges)
    return max((len(c) for c in nx.find_cliques(g)), default=0)


def gaussian_binomial_brute(n, k, q):
    """Count k-subspaces of F_q^n by counting ordered bases."""
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    return num // den


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank, col, width = 0, 0, len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank
