"""Small dense integer matrices stored as tuples of row tuples.

Everything here is exact.  Matrices are square and small (rank at most a
few dozen), so plain Python beats any array library on overhead.
"""

from __future__ import annotations

from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    return m


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def matpow(a: Matrix, e: int) -> Matrix:
    """Non-negative power by repeated squaring."""
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        e >>= 1
    return result


def scale(a: Matrix, c: int) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def apply_j(v: Sequence[int]) -> Vector:
    """Return J·v for the block-diagonal form with blocks [[0, 1], [-1, 0]]."""
    out = []
    for i in range(0, len(v), 2):
        out.append(v[i + 1])
        out.append(-v[i])
    return tuple(out)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """uᵀ J v, so that the pair (e_1, e_2) pairs to +1."""
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(0, len(u), 2))


def standard_form(k: int) -> Matrix:
    n = 2 * k
    rows = [[0] * n for _ in range(n)]
    for i in range(k):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return as_matrix(rows)


def form_of(a: Matrix) -> Matrix:
    """Gram matrix of the form pulled back along ``a``, i.e. aᵀ J a."""
    cols = transpose(a)
    return tuple(tuple(pairing(ci, cj) for cj in cols) for ci in cols)


def is_symplectic(a: Matrix) -> bool:
    return len(a) % 2 == 0 and form_of(a) == standard_form(len(a) // 2)


def is_antisymplectic(a: Matrix) -> bool:
    return len(a) % 2 == 0 and form_of(a) == scale(standard_form(len(a) // 2), -1)


def symplectic_inverse(a: Matrix) -> Matrix:
    """Inverse of a symplectic matrix, computed as -J aᵀ J."""
    j = standard_form(len(a) // 2)
    return scale(matmul(matmul(j, transpose(a)), j), -1)


def antisymplectic_inverse(a: Matrix) -> Matrix:
    """Inverse of a matrix with aᵀ J a = -J, computed as J aᵀ J."""
    j = standard_form(len(a) // 2)
    return matmul(matmul(j, transpose(a)), j)


def trace(a: Matrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def charpoly(a: Matrix) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - a), coefficients from the leading term down."""
    import sympy

    if not a:
        return (1,)
    x = sympy.Symbol("x")
    poly = sympy.Matrix(a).charpoly(x)
    return tuple(int(c) for c in poly.all_coeffs())


def det(a: Matrix) -> int:
    import sympy

    if not a:
        return 1
    return int(sympy.Matrix(a).det())


def rank(rows: Sequence[Sequence[int]]) -> int:
    import sympy

    if not rows:
        return 0
    return int(sympy.Matrix([list(r) for r in rows]).rank())
