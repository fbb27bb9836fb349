"""Matrix side of the apo-syntonic conversion and its normal-form
counterparts.

Matrices are nested tuples ``((a11, a12), (a21, a22))`` of Python ints; all
arithmetic is exact and parity preconditions are enforced rather than
passing through rationals.
"""

from __future__ import annotations

from typing import Sequence

from .sturmian import (
    D,
    G,
    GT,
    Generator2,
    Mat2,
    NormalForm2,
    evaluate_normal_form,
    incidence2,
    power,
    reverse_normal_form,
)
from .words import DomainError


def mat(a11: int, a12: int, a21: int, a22: int) -> Mat2:
    return ((a11, a12), (a21, a22))


def det(m: Mat2) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matmul(x: Mat2, y: Mat2) -> Mat2:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


R = mat(1, 1, 0, 1)


def in_sl2n(m: Mat2) -> bool:
    return det(m) == 1 and all(v >= 0 for row in m for v in row)


def beta_tilde(m: Mat2) -> Mat2:
    (a11, a12), (a21, a22) = m
    if (a22 - a21) % 2:
        raise DomainError(f"{m}: a22 - a21 must be even")
    half = (a22 - a21) // 2
    return mat(2 * a11 + a21, a12 - a11 + half, a21, half)


def beta_tilde_inverse(m: Mat2) -> Mat2:
    (c11, c12), (c21, c22) = m
    if (c11 - c21) % 2:
        raise DomainError(f"{m}: c11 - c21 must be even")
    half = (c11 - c21) // 2
    return mat(half, half + c12 - c22, c21, c21 + 2 * c22)


def in_sigma_lower(m: Mat2) -> bool:
    """Membership in Sigma_2 = {(b11 b12; b21 2b22) R : 2 b11 b22 - b12 b21 = 1}."""
    (a11, a12), (a21, a22) = m
    b11, b12, b21 = a11, a12 - a11, a21
    if (a22 - a21) % 2:
        return False
    b22 = (a22 - a21) // 2
    return min(b11, b12, b21, b22) >= 0 and 2 * b11 * b22 - b12 * b21 == 1


def in_sigma_upper(m: Mat2) -> bool:
    """Membership in Sigma^2 = {R (2b11 b12; b21 b22) : 2 b11 b22 - b12 b21 = 1}."""
    (a11, a12), (a21, a22) = m
    b21, b22, b12 = a21, a22, a12 - a22
    if (a11 - a21) % 2:
        return False
    b11 = (a11 - a21) // 2
    return min(b11, b12, b21, b22) >= 0 and 2 * b11 * b22 - b12 * b21 == 1


def beta(m: Mat2) -> Mat2:
    """The apo-syntonic conversion Sigma_2 -> Sigma^2."""
    if not in_sigma_lower(m):
        raise DomainError(f"{m} is not in Sigma_2")
    return beta_tilde(m)


def delta(m: Mat2) -> Mat2:
    """Swap the main-diagonal entries."""
    (a11, a12), (a21, a22) = m
    return mat(a22, a12, a21, a11)


def check_commutative_diagram(m: Mat2) -> bool:
    """Do both paths Sigma_2 -> Sigma^2 agree: beta(delta(beta(m))) == delta(m)?"""
    if not in_sigma_lower(m):
        raise DomainError(f"{m} is not in Sigma_2")
    return beta(delta(beta(m))) == delta(m)


def check_diagram_loop(m: Mat2) -> bool:
    """The other reading of the square: delta o beta o delta o beta = id on Sigma_2."""
    if not in_sigma_lower(m):
        raise DomainError(f"{m} is not in Sigma_2")
    return delta(beta(delta(beta(m)))) == m


def family_shape(nf: Sequence[Generator2]) -> tuple[int, int]:
    """Match ``G^k D G^j`` and return ``(k, j)``."""
    nf = tuple(nf)
    if nf.count(D) != 1 or any(g not in (G, D) for g in nf):
        raise DomainError(f"{nf} is not of the shape G^k D G^j")
    k = nf.index(D)
    return k, len(nf) - k - 1


def _split_f(nf: Sequence[Generator2]) -> tuple[int, int]:
    k, j = family_shape(nf)
    if j == 0 or j % 2:
        raise DomainError(f"right exponent {j} must be even and positive")
    return k, j // 2


def f_form(k: int, n: int) -> NormalForm2:
    """G^k D G^2n."""
    return power(G, k) + (D,) + power(G, 2 * n)


def theta(nf: Sequence[Generator2]) -> NormalForm2:
    """G^k D G^2n  ->  G^(2k+2) D G^(n-1)."""
    k, n = _split_f(nf)
    return power(G, 2 * k + 2) + (D,) + power(G, n - 1)


def theta_tilde(nf: Sequence[Generator2]) -> NormalForm2:
    """G^k D G^2n  ->  G^k G~^(k+2) D G^(n-1)."""
    k, n = _split_f(nf)
    return power(G, k) + power(GT, k + 2) + (D,) + power(G, n - 1)


def check_theta_rev_identity(k: int, n: int) -> bool:
    f = f_form(k, n)
    return theta(reverse_normal_form(theta(f))) == reverse_normal_form(f)


def check_theta_matrix(k: int, n: int) -> bool:
    """Word-level theta agrees with the matrix-level beta."""
    f = f_form(k, n)
    mf = incidence2(evaluate_normal_form(f, ("a", "c")))
    mg = incidence2(evaluate_normal_form(theta(f), ("b", "c")))
    return beta(mf) == mg


def zarlino_predecessors(k: int, n: int) -> list[NormalForm2]:
    """G^(k+l) G~^(k+2-l) D G^(n-1) for l = 1 .. k+2."""
    if k < 0 or n < 1:
        raise DomainError(f"need k >= 0 and n >= 1, got ({k}, {n})")
    return [power(G, k + l) + power(GT, k + 2 - l) + (D,) + power(G, n - 1) for l in range(1, k + 3)]
