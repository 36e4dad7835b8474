"""Vectorized kernels over arrays of element encodings (table backend only).

Every function takes a FieldCtx whose log/exp tables exist and operates on
int64 numpy arrays of encodings.  These are the hot loops behind the
exhaustive scans; each has a scalar counterpart on FieldCtx that the test
suite cross-checks against.
"""

import numpy as np


def _require_table(ctx):
    if ctx.backend != "table":
        raise ValueError("field-too-large: bulk kernels need the table backend")


def elements(ctx):
    _require_table(ctx)
    return np.arange(ctx.q, dtype=np.int64)


def nonzero_elements(ctx):
    _require_table(ctx)
    return np.arange(1, ctx.q, dtype=np.int64)


def add(ctx, X, Y):
    _require_table(ctx)
    if ctx.n == 1:
        return (X + Y) % ctx.p
    C = ctx._chunk
    t = ctx._addt
    out = t[X % C, Y % C]
    X, Y = X // C, Y // C
    mult = C
    while X.any() or Y.any():
        out = out + t[X % C, Y % C] * mult
        X, Y = X // C, Y // C
        mult *= C
    return out


def neg(ctx, X):
    _require_table(ctx)
    if ctx.n == 1:
        return (-X) % ctx.p
    C = ctx._chunk
    t = ctx._negt
    out = t[X % C]
    X = X // C
    mult = C
    while X.any():
        out = out + t[X % C] * mult
        X = X // C
        mult *= C
    return out


def mul(ctx, X, Y):
    _require_table(ctx)
    N = ctx.q - 1
    prod = ctx.exp_table[(ctx.log_table[X] + ctx.log_table[Y]) % N]
    zero = (X == 0) | (Y == 0)
    if zero.any():
        prod = np.where(zero, 0, prod)
    return prod


def mul_scalar(ctx, a, X):
    _require_table(ctx)
    if a == 0:
        return np.zeros_like(X)
    N = ctx.q - 1
    la = int(ctx.log_table[a])
    prod = ctx.exp_table[(ctx.log_table[X] + la) % N]
    return np.where(X == 0, 0, prod)


def pow_const(ctx, X, e):
    """X**e element-wise for one wide exponent e >= 0."""
    _require_table(ctx)
    N = ctx.q - 1
    if e == 0:
        return np.ones_like(X)
    e %= N
    if e == 0:  # x^(q-1): 1 for nonzero x
        return np.where(X == 0, 0, 1).astype(X.dtype)
    out = ctx.exp_table[(ctx.log_table[X] * e) % N]
    return np.where(X == 0, 0, out)


def frobenius(ctx, X, j):
    return pow_const(ctx, X, ctx.p ** j)


def trace(ctx, X, k=1):
    if ctx.n % k:
        raise ValueError(f"k-not-divisor: {k} does not divide {ctx.n}")
    acc = X
    cur = X
    for _ in range(ctx.n // k - 1):
        cur = pow_const(ctx, cur, ctx.p ** k)
        acc = add(ctx, acc, cur)
    return acc


def poly_eval_all(ctx, coeffs):
    """Values of a coefficient sequence (ascending) on the whole field."""
    X = elements(ctx)
    acc = np.zeros_like(X)
    for c in reversed(list(coeffs)):
        acc = mul(ctx, acc, X)
        if c:
            acc = add(ctx, acc, np.full_like(X, c))
    return acc


def monomial_values(ctx, d):
    """x^d over the whole field, memoized per reduced exponent."""
    _require_table(ctx)
    key = d % (ctx.q - 1) if d else 0
    got = ctx._monomial_cache.get(key)
    if got is None:
        got = pow_const(ctx, elements(ctx), d)
        got.setflags(write=False)
        ctx._monomial_cache[key] = got
    return got


def values_are_permutation(ctx, vals):
    """True iff a length-q value array hits every encoding exactly once."""
    return bool(np.bincount(vals, minlength=ctx.q).max() == 1)


def binomial_is_permutation(ctx, d, a):
    """Bijectivity of x -> x^d + a*x, the inner check of every direct scan."""
    vals = add(ctx, monomial_values(ctx, d), mul_scalar(ctx, a, elements(ctx)))
    return values_are_permutation(ctx, vals)


def lambda_scan(ctx, r, k, A=None):
    """Conjugate elementary symmetric vectors for a batch of coefficients.

    For each a in A (default: every nonzero element) computes
    (lambda_1, ..., lambda_r) of the r Frobenius^k-conjugates of a.
    Returns (A, lam) with lam of shape (len(A), r) holding encodings.
    """
    _require_table(ctx)
    if ctx.n != r * k:
        raise ValueError(f"degree-mismatch: need n == r*k, got {ctx.n} != {r}*{k}")
    if A is None:
        A = nonzero_elements(ctx)
    conj = [A]
    for _ in range(r - 1):
        conj.append(frobenius(ctx, conj[-1], k))
    lam = [np.zeros_like(A) for _ in range(r)]
    for c in conj:
        for j in range(r - 1, 0, -1):
            lam[j] = add(ctx, lam[j], mul(ctx, lam[j - 1], c))
        lam[0] = add(ctx, lam[0], c)
    return A, np.stack(lam, axis=1)
