"""Independent slow oracles used to cross-check the production code.

Nothing here imports the engine under test; polynomials are plain dicts
``{exponent tuple: Fraction}`` and the order is a Python sort key.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def lex_key(m):
    return tuple(m)


def weighted_key(w):
    return lambda m: (sum(a * b for a, b in zip(w, m)),) + tuple(-e for e in reversed(m))


def lead(f, key):
    return max(f, key=key)


def sub_scaled(f, g, c, shift):
    out = dict(f)
    for m, v in g.items():
        k = tuple(a + b for a, b in zip(m, shift))
        out[k] = out.get(k, 0) - c * v
        if out[k] == 0:
            del out[k]
    return out


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def reduce_full(f, G, key):
    f = dict(f)
    r = {}
    while f:
        m = lead(f, key)
        c = f[m]
        for g in G:
            lg = lead(g, key)
            if divides(lg, m):
                shift = tuple(a - b for a, b in zip(m, lg))
                f = sub_scaled(f, g, Fraction(c) / g[lg], shift)
                break
        else:
            r[m] = c
            del f[m]
    return r


def monic(f, key):
    c = f[lead(f, key)]
    return {m: Fraction(v) / c for m, v in f.items()}


class OracleLimit(Exception):
    pass


def naive_groebner(F, key, limit=None):
    """Textbook Buchberger without criteria, followed by full interreduction.

    With ``limit`` set, raise :class:`OracleLimit` after that many S-pairs.
    """
    G = [monic(f, key) for f in F if f]
    pairs = list(combinations(range(len(G)), 2))
    done = 0
    while pairs:
        done += 1
        if limit is not None and done > limit:
            raise OracleLimit(done)
        i, j = pairs.pop(0)
        f, g = G[i], G[j]
        lf, lg = lead(f, key), lead(g, key)
        l = tuple(max(a, b) for a, b in zip(lf, lg))
        s = sub_scaled(
            {tuple(a + b for a, b in zip(m, [x - y for x, y in zip(l, lf)])): v for m, v in f.items()},
            g,
            Fraction(1),
            tuple(x - y for x, y in zip(l, lg)),
        )
        r = reduce_full(s, G, key)
        if r:
            G.append(monic(r, key))
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    minimal = []
    for g in sorted(G, key=lambda g: key(lead(g, key))):
        if not any(divides(lead(h, key), lead(g, key)) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(monic(reduce_full(g, others, key), key))
    return sorted(out, key=lambda g: key(lead(g, key)))


def hilbert_by_counting(leads, w, count):
    """Count standard monomials of each weighted degree below ``count``."""
    n = len(w)
    out = [0] * count

    def rec(i, prefix, deg):
        if i == n:
            m = tuple(prefix)
            if not any(divides(l, m) for l in leads):
                out[deg] += 1
            return
        e = 0
        while deg + e * w[i] < count:
            rec(i + 1, prefix + [e], deg + e * w[i])
            e += 1

    rec(0, [], 0)
    return out


def rank_over_q(rows):
    """Rank of a rational matrix by plain Gaussian elimination."""
    M = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def flats_by_subsets(normals):
    """Every flat as the set of hyperplanes containing it, found from all subsets.

    The flat cut out by a subset S contains hyperplane H exactly when the
    normal of H is in the span of the normals of S.
    """
    n = len(normals)
    flats = {}
    for mask in range(1 << n):
        S = [normals[i] for i in range(n) if mask >> i & 1]
        r = rank_over_q(S) if S else 0
        closure = frozenset(i for i in range(n) if (rank_over_q(S + [normals[i]]) if S else 1) == r)
        flats[closure] = r
    return flats
