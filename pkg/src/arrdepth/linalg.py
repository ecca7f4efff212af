"""Exact rational linear algebra on small dense matrices.

Everything works on lists of lists / tuples of ``fractions.Fraction`` (plain
ints are fine too, they coerce). Sizes here are tiny (d <= 3 or so per the
desk-scale budgets), so plain Gaussian elimination is the right tool.
"""

from fractions import Fraction


def _rows(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def rank(matrix):
    """Rank of a matrix, exactly."""
    m = _rows(matrix)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                factor = m[i][col] / inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs``.

    Returns a tuple of Fractions, or None when the system is inconsistent or
    underdetermined (no unique solution).
    """
    m = _rows(matrix)
    b = [Fraction(x) for x in rhs]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    aug = [m[i] + [b[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col]
        aug[r] = [a / inv for a in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * p for a, p in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None  # inconsistent
    if r < ncols:
        return None  # underdetermined
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return tuple(x)


def solve_consistent(matrix, rhs):
    """One solution of a consistent system (free variables set to 0), else None."""
    m = _rows(matrix)
    b = [Fraction(x) for x in rhs]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    aug = [m[i] + [b[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col]
        aug[r] = [a / inv for a in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * p for a, p in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return tuple(x)


def kernel_vector(matrix, ncols=None):
    """A nonzero rational vector in the kernel of ``matrix``, or None.

    ``ncols`` must be given for an empty row list.
    """
    m = _rows(matrix)
    if not m:
        if not ncols:
            return None
        return tuple([Fraction(1)] + [Fraction(0)] * (ncols - 1))
    ncols = len(m[0])
    nrows = len(m)
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        m[r] = [a / inv for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * p for a, p in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fcol = free[0]
    x = [Fraction(0)] * ncols
    x[fcol] = Fraction(1)
    for i, col in enumerate(pivots):
        x[col] = -m[i][fcol]
    return tuple(x)


def dot(u, v):
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def vsub(u, v):
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vadd(u, v):
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, v))


def vscale(c, u):
    c = Fraction(c)
    return tuple(c * Fraction(a) for a in u)
