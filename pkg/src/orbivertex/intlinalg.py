"""Small exact linear algebra over ℤ and ℚ.

Matrices are lists of rows. Sizes here never exceed a few dozen, so the
straightforward cubic algorithms are plenty.
"""

from fractions import Fraction

from .errors import Singular


def to_fractions(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def determinant(matrix):
    m = to_fractions(matrix)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            factor = m[r][c] / m[c][c]
            if factor:
                m[r] = [x - factor * y for x, y in zip(m[r], m[c])]
    return det


def inverse(matrix):
    """Exact inverse by Gauss-Jordan elimination; raises Singular."""
    n = len(matrix)
    aug = [row + ident for row, ident in zip(to_fractions(matrix), identity(n))]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def solve(matrix, rhs):
    inv = inverse(matrix)
    return [sum(a * Fraction(b) for a, b in zip(row, rhs)) for row in inv]


def rank(matrix):
    m = to_fractions(matrix)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(rows):
            if i != r and m[i][c]:
                factor = m[i][c] / m[r][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def hermite_normal_form(rows):
    """Row-style HNF of an integer matrix, zero rows removed.

    Two integer matrices generate the same row lattice iff their HNFs agree.
    """
    m = [[int(x) for x in row] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        # Euclid down the column until a single nonzero entry remains at row r.
        while True:
            nonzero = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r] if any(row)]


def integer_kernel(matrix):
    """A ℤ-basis (as rows) of {x ∈ ℤⁿ : matrix·x = 0}.

    Column-reduces [matrix; I] by unimodular operations: columns of the
    identity block under zero columns of the top block span the kernel.
    """
    a = [[int(x) for x in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0])
    cols = [[a[i][j] for i in range(nrows)] + [int(k == j) for k in range(ncols)]
            for j in range(ncols)]
    start = 0
    for i in range(nrows):
        while True:
            live = [j for j in range(start, ncols) if cols[j][i] != 0]
            if not live:
                break
            piv = min(live, key=lambda j: abs(cols[j][i]))
            cols[start], cols[piv] = cols[piv], cols[start]
            clean = True
            for j in range(start + 1, ncols):
                if cols[j][i]:
                    q = cols[j][i] // cols[start][i]
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[start])]
                    if cols[j][i]:
                        clean = False
            if clean:
                break
        if any(cols[j][i] for j in range(start, ncols)):
            start += 1
    return [col[nrows:] for col in cols[start:]]


def same_lattice(rows_a, rows_b):
    return hermite_normal_form(rows_a) == hermite_normal_form(rows_b)
