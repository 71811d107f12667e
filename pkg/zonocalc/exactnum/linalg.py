"""Exact linear algebra over ZZ and QQ on top of sympy's DomainMatrix."""
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .rational import Point, Rat, rat

Matrix = Sequence[Sequence]


def qq_matrix(rows: Matrix, ncols: Optional[int] = None) -> DomainMatrix:
    rows = [[rat(x) for x in row] for row in rows]
    width = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix(rows, (len(rows), width), QQ)


def zz_matrix(rows: Matrix) -> DomainMatrix:
    rows = [[ZZ(int(x)) for x in row] for row in rows]
    width = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), width), ZZ)


def det(rows: Matrix) -> Rat:
    if not rows:
        return QQ(1)
    return qq_matrix(rows).det()


def int_det(rows: Matrix) -> int:
    if not rows:
        return 1
    return int(zz_matrix(rows).det())


def rank(rows: Matrix) -> int:
    rows = [row for row in rows]
    if not rows:
        return 0
    return qq_matrix(rows).rank()


def transpose(rows: Matrix) -> List[List]:
    return [list(col) for col in zip(*rows)]


def solve(rows: Matrix, rhs: Sequence) -> Optional[Point]:
    """Unique solution of a square system, or None when it is singular."""
    a = qq_matrix(rows)
    if a.det() == 0:
        return None
    b = DomainMatrix([[rat(x)] for x in rhs], (len(rhs), 1), QQ)
    x = a.lu_solve(b)
    return tuple(row[0] for row in x.to_list())


def solve_in_span(columns: Sequence[Sequence], target: Sequence) -> Optional[Point]:
    """
    Coefficients c with sum c_i * columns[i] == target for linearly
    independent columns; None when target is outside their span.
    """
    if not columns:
        return () if not any(target) else None
    k = len(columns)
    matrix = transpose(columns)
    # pick k independent rows to get a square system
    chosen: List[int] = []
    for i in range(len(matrix)):
        trial = chosen + [i]
        if rank([matrix[j] for j in trial]) == len(trial):
            chosen = trial
        if len(chosen) == k:
            break
    if len(chosen) < k:
        return None
    coeffs = solve([matrix[j] for j in chosen], [target[j] for j in chosen])
    if coeffs is None:
        return None
    for i, row in enumerate(matrix):
        if sum((c * x for c, x in zip(coeffs, row)), QQ(0)) != target[i]:
            return None
    return coeffs


def nullspace(rows: Matrix, ncols: int) -> List[Point]:
    """Rational basis (reduced row echelon form) of {x : rows . x = 0}."""
    if not rows:
        return [tuple(QQ(1) if i == j else QQ(0) for j in range(ncols)) for i in range(ncols)]
    basis = qq_matrix(rows).nullspace()
    return [tuple(row) for row in basis.to_list()]


def primitive_integer(vector: Sequence[Rat]) -> Tuple[int, ...]:
    """Scales a nonzero rational vector to a primitive integer vector with first nonzero entry positive."""
    denominators = 1
    for x in vector:
        d = int(rat(x).denominator)
        denominators = denominators * d // gcd(denominators, d)
    scaled = [rat(x) * denominators for x in vector]
    ints = [int(v.numerator) // int(v.denominator) for v in scaled]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def smith_decomposition(rows: Matrix) -> Tuple[List[int], List[List[int]], List[List[int]]]:
    """
    Smith normal form S * A * T = D of an integer matrix.

    Returns the (signed) diagonal of D together with the unimodular S and T as integer
    lists.
    """
    smf, s, t = smith_normal_decomp(zz_matrix(rows))
    d = smf.to_list()
    diagonal = [int(d[i][i]) for i in range(min(len(d), len(d[0]) if d else 0))]
    return diagonal, [[int(x) for x in row] for row in s.to_list()], [[int(x) for x in row] for row in t.to_list()]


def solve_small(rows: Matrix, rhs: Sequence) -> Optional[Point]:
    """
    Gaussian elimination on plain lists for the tiny square systems of vertex
    enumeration, where building a DomainMatrix per system dominates the cost.
    """
    n = len(rows)
    aug = [[rat(x) for x in row] + [rat(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        head = aug[col][col]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col] / head
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][n] / aug[i][i] for i in range(n))
