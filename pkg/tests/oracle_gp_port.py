"""Independent sympy port of the reference computer-algebra pipeline.

This is a deliberately naive, straight-line transcription of the original
calculator session the engine reproduces: build the level relations, reduce
by polynomial remainder in a scratch variable from the top level down,
extract the ``u^(r-1)`` coefficient per level, substitute the degree
polynomials of the base Chern classes, set ``h`` to 1 and multiply by ``d``.
Everything algebraic is delegated to sympy, so no code is shared with the
package under test.  The golden coefficient lists frozen in the acceptance
suite were produced by this module; ``python -m tests.oracle_gp_port``
re-derives them.
"""

from __future__ import annotations

import sympy as sp

_MAXV = 10  # 1-indexed symbol arrays, matching the original session

d, h, X = sp.symbols("d h X")
c = [None] + [sp.Symbol(f"c{i}") for i in range(1, _MAXV)]
u = [None] + [sp.Symbol(f"u{i}") for i in range(1, _MAXV)]


def chern_tables(r: int, k: int):
    """Lifted Chern classes per level and the monic relations (in X)."""
    v = [sp.Integer(0)] * _MAXV
    q = [None] * _MAXV
    q1 = X**r
    for j in range(1, r + 1):
        q1 += c[j] * X ** (r - j)
    q[1] = sp.expand(q1)
    for s in range(1, r + 1):
        v[s] = c[s]
    levels = [list(v)]
    for t in range(1, k):
        w = [sp.Integer(0)] * _MAXV
        for s in range(1, r + 1):
            ws = v[s] + (sp.binomial(r, s) - sp.binomial(r, s - 1)) * u[t] ** s
            for j in range(1, s):
                ws += (sp.binomial(r - j, s - j) - sp.binomial(r - j, s - j - 1)) * v[j] * u[t] ** (s - j)
            w[s] = sp.expand(ws)
        for s in range(1, r + 1):
            v[s] = w[s]
        levels.append(list(v))
        qt = X**r
        for j in range(1, r + 1):
            qt += v[j] * X ** (r - j)
        q[t + 1] = sp.expand(qt)
    return levels, q


def reduc(a, q, r: int, k: int):
    a = sp.expand(a)
    for j in range(0, k):
        a = a.subs(u[k - j], X)
        a = sp.expand(sp.rem(sp.Poly(a, X), sp.Poly(q[k - j], X)).as_expr())
        a = a.subs(X, u[k - j])
    return sp.expand(a)


def integ(a, r: int, k: int):
    for j in range(0, k):
        var = u[k - j]
        a = sp.expand(a)
        if a.has(var):
            a = sp.Poly(a, var).coeff_monomial(var ** (r - 1))
        elif r - 1 != 0:
            a = sp.Integer(0)
    return sp.expand(a)


def chern_evaluations(n: int, geometry: str):
    """Degree polynomials of the base Chern classes (with h set to 1)."""
    e = [None] * _MAXV
    if geometry == "log":
        for s in range(1, n + 1):
            es = d**s
            for j in range(1, s + 1):
                es += (-1) ** j * d ** (s - j) * sp.binomial(n + 1, j)
            e[s] = sp.expand((-1) ** s * es)
    elif geometry == "compact":
        for s in range(1, n + 1):
            e[s] = sp.expand(
                sum(sp.binomial(n + 2, s - i) * (-d) ** i for i in range(0, s + 1))
            )
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    return e


def evaluate(a, e, r: int):
    for s in range(1, r + 1):
        a = a.subs(c[s], e[s])
    return sp.expand(a.subs(h, 1) * d)


def morse_poly(dim: int, order: int, geometry: str = "log", weights=None) -> sp.Poly:
    """The degree polynomial P(d) for one tower configuration."""
    n = dim
    r = dim
    k = order
    N = n + k * (r - 1)
    if weights is None:
        weights = [2 * 3 ** (k - j - 1) for j in range(1, k)] + [1]
        if k == 1:
            weights = [1]
    e = chern_evaluations(n, geometry)
    _, q = chern_tables(r, k)
    total = sum(weights)
    B = 2 * total * h
    A = B + sum(weights[j - 1] * u[j] for j in range(1, k + 1))
    R = reduc(sp.expand((A - N * B) * A ** (N - 1)), q, r, k)
    C = integ(R, r, k)
    return sp.Poly(evaluate(C, e, r), d)


def ascending_coefficients(P: sp.Poly) -> tuple[int, ...]:
    coeffs = [int(x) for x in reversed(P.all_coeffs())]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


if __name__ == "__main__":
    for pair in [(2, 2), (3, 3)]:
        P = morse_poly(*pair, "log")
        print(f"log {pair}: {ascending_coefficients(P)}")
    for pair in [(2, 2), (3, 3)]:
        P = morse_poly(*pair, "compact")
        print(f"compact {pair}: {ascending_coefficients(P)}")
