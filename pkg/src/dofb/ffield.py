"""Exact linear algebra over a prime field GF(P).

Vectors are plain lists of Python ints in ``[0, P)``; matrices are lists of rows.
Everything here is exact, so a rank or span test never depends on a tolerance.
"""

import os

DEFAULT_PRIME = 2**61 - 1
MIN_PRIME = 2**31 - 1
PRIME_ENV_VAR = "DOFB_PRIME"


def check_prime(p):
    """Validate a user-supplied modulus and return it as an int."""
    p = int(p)
    if p < MIN_PRIME:
        raise ValueError(f"field modulus must be at least 2^31 - 1, got {p}")
    if p != DEFAULT_PRIME:
        from sympy import isprime

        if not isprime(p):
            raise ValueError(f"field modulus {p} is not prime")
    return p


def prime_from_env(environ=None):
    environ = os.environ if environ is None else environ
    value = environ.get(PRIME_ENV_VAR)
    if not value:
        return DEFAULT_PRIME
    return check_prime(value)


def rref(rows, p):
    """Reduced row echelon form of ``rows`` mod ``p``.

    Returns ``(basis, pivots)``: the non-zero reduced rows and their pivot columns.
    """
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p):
    return len(rref(rows, p)[1])


def in_span(row, rows, p):
    """True iff ``row`` is a linear combination of ``rows``."""
    if not any(x % p for x in row):
        return True
    basis, pivots = rref(rows, p)
    v = [x % p for x in row]
    for b, c in zip(basis, pivots):
        if v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, b)]
    return not any(v)


def restricted_basis(rows, keep, p):
    """Basis of ``span(rows)`` intersected with vectors supported on ``keep``.

    The result is in reduced echelon form, so it is canonical for a given span.
    """
    if not rows:
        return []
    n = len(rows[0])
    keep = sorted(set(keep))
    drop = [j for j in range(n) if j not in set(keep)]
    order = drop + keep
    permuted = [[r[j] for j in order] for r in rows]
    basis, pivots = rref(permuted, p)
    inside = []
    for b, c in zip(basis, pivots):
        if c >= len(drop):
            full = [0] * n
            for pos, j in enumerate(order):
                full[j] = b[pos]
            inside.append(full)
    return rref(inside, p)[0]


def combine(terms, p):
    """Sum of ``coef * row`` over ``(coef, row)`` pairs."""
    terms = list(terms)
    out = [0] * len(terms[0][1])
    for coef, row in terms:
        out = [(x + coef * y) % p for x, y in zip(out, row)]
    return out
