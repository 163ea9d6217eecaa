"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive (textbook Gaussian elimination with
direct fraction division, cofactor expansion, brute-force tensor products)
and shares no code with the package under test.
"""

from fractions import Fraction


def naive_rref(rows):
    """Reduced row echelon form by plain Gaussian elimination.

    Returns (rref_rows, pivot_columns)."""
    rows = [[Fraction(x) for x in row] for row in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def naive_rank(rows):
    return len(naive_rref(rows)[1])


def naive_kernel(rows, ncols):
    """Kernel basis from the RREF, one vector per free column."""
    rref, pivots = naive_rref(rows) if rows else ([], [])
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rref[r][f]
        basis.append(v)
    return basis


def naive_solve(a_rows, b):
    """Solve A x = b; returns one solution or None if inconsistent."""
    if not a_rows:
        return [Fraction(0)] * 0 if all(x == 0 for x in b) else None
    ncols = len(a_rows[0])
    aug = [list(row) + [bi] for row, bi in zip(a_rows, b)]
    rref, pivots = naive_rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rref[r][ncols]
    return x


def determinant(rows):
    """Cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * Fraction(rows[0][j]) * determinant(minor)
    return total


def adjugate_inverse(rows):
    """Inverse by the adjugate formula; None if the determinant vanishes."""
    n = len(rows)
    det = determinant(rows)
    if det == 0:
        return None
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            sign = -1 if (i + j) % 2 else 1
            inv[j][i] = sign * determinant(minor) / det
    return inv


def tensor_cube_product(mult, x, y, n):
    """Brute-force product in the threefold tensor power of an n-dim algebra.

    ``mult[i][j]`` is the dense structure-constant list for e_i * e_j;
    ``x`` and ``y`` are dense coordinate lists of length n**3."""
    out = [Fraction(0)] * n**3
    for i1 in range(n):
        for i2 in range(n):
            for i3 in range(n):
                cx = x[(i1 * n + i2) * n + i3]
                if cx == 0:
                    continue
                for j1 in range(n):
                    for j2 in range(n):
                        for j3 in range(n):
                            cy = y[(j1 * n + j2) * n + j3]
                            if cy == 0:
                                continue
                            for k1 in range(n):
                                a = mult[i1][j1][k1]
                                if a == 0:
                                    continue
                                for k2 in range(n):
                                    b = mult[i2][j2][k2]
                                    if b == 0:
                                        continue
                                    for k3 in range(n):
                                        c = mult[i3][j3][k3]
                                        if c == 0:
                                            continue
                                        out[(k1 * n + k2) * n + k3] += cx * cy * a * b * c
    return out
