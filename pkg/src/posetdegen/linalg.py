"""Exact rational linear algebra: rank, determinant, convex-combination tests.

Everything runs over fractions.Fraction; no floating point is used anywhere.
"""

from fractions import Fraction


def rank(rows):
    """Rank of a list of rational vectors."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def determinant(rows):
    """Determinant of a square rational matrix."""
    mat = [[Fraction(x) for x in row] for row in rows]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        inv = mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return det


def affine_dimension(points):
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    return rank([[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in pts[1:]])


def solve(matrix, rhs):
    """Solve a square nonsingular rational system; returns the solution vector."""
    n = len(matrix)
    mat = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        mat[c], mat[pivot] = mat[pivot], mat[c]
        inv = mat[c][c]
        mat[c] = [a / inv for a in mat[c]]
        for i in range(n):
            if i != c and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return [mat[i][n] for i in range(n)]


def in_convex_hull(point, points):
    """Exact test whether `point` is a convex combination of `points`.

    Phase-1 simplex with Bland's rule; terminates and never rounds.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return False
    d = len(point)
    m = d + 1
    nvars = len(pts)
    rows = [[Fraction(p[r]) for p in pts] for r in range(d)]
    rows.append([Fraction(1)] * nvars)
    rhs = [Fraction(x) for x in point] + [Fraction(1)]
    for r in range(m):
        if rhs[r] < 0:
            rows[r] = [-a for a in rows[r]]
            rhs[r] = -rhs[r]
    # tableau columns: nvars structural + m artificial + rhs
    tab = [rows[r] + [Fraction(1) if i == r else Fraction(0) for i in range(m)] + [rhs[r]]
           for r in range(m)]
    basis = [nvars + r for r in range(m)]
    total = nvars + m
    while True:
        in_basis = set(basis)
        # phase-1 reduced costs: cost 1 on artificials, 0 on structural columns
        entering = None
        for j in range(total):
            if j in in_basis:
                continue
            red = (Fraction(1) if j >= nvars else Fraction(0))
            red -= sum(tab[i][j] for i in range(m) if basis[i] >= nvars)
            if red < 0:
                entering = j
                break
        if entering is None:
            break
        ratio = None
        leaving = None
        for i in range(m):
            a = tab[i][entering]
            if a > 0:
                r = tab[i][-1] / a
                if ratio is None or r < ratio or (r == ratio and basis[i] < basis[leaving]):
                    ratio = r
                    leaving = i
        if leaving is None:
            break  # unbounded cannot happen for a feasibility problem, defensive
        piv = tab[leaving][entering]
        tab[leaving] = [a / piv for a in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leaving])]
        basis[leaving] = entering
    objective = sum(tab[i][-1] for i in range(m) if basis[i] >= nvars)
    return objective == 0


def extreme_points(points):
    """The vertices of conv(points): members that are not combinations of the rest."""
    pts = [tuple(p) for p in points]
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not in_convex_hull(p, others):
            out.append(p)
    return out
