"""Small exact linear algebra over Fraction or GaussianRational entries.

Plain Gaussian elimination on lists of lists.  Matrices here are tiny
(at most a few hundred rows), so clarity wins over cleverness.
"""

from fractions import Fraction


def _is_zero(x):
    return not x


def copy_matrix(rows):
    return [list(r) for r in rows]


def rref(rows):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = copy_matrix(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not _is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0} as a list of vectors."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    ncols = len(rows[0])
    m, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """Solve A x = b.  Returns (particular, kernel basis) or None when the
    system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(piv):
        x[pc] = m[i][ncols]
    return x, nullspace(rows, ncols)


def column_space(vectors):
    """Basis (as row vectors) of the span of the given vectors."""
    if not vectors:
        return []
    m, piv = rref(vectors)
    return [m[i] for i in range(len(piv))]


def determinant(rows):
    m = copy_matrix(rows)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(a):
    n = len(a)
    aug = [list(r) + e for r, e in zip(a, identity(n))]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in m]


def charpoly(a):
    """Coefficients [c0, ..., cn] of det(t I - A), lowest degree first
    (Faddeev-LeVerrier, exact over the rationals)."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = matmul(a, m)
        m = [[am[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def signature(sym):
    """(positive, negative, zero) counts of a symmetric rational matrix via
    congruence diagonalization."""
    m = copy_matrix(sym)
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        # find a nonzero diagonal entry, or make one
        d = next((i for i in active if m[i][i]), None)
        if d is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j  (row and column operation)
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            d = i
        piv = m[d][d]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in active:
            if i == d or not m[i][d]:
                continue
            f = m[i][d] / piv
            for k in range(n):
                m[i][k] -= f * m[d][k]
            for k in range(n):
                m[k][i] -= f * m[k][d]
        active.remove(d)
    return pos, neg, n - pos - neg
