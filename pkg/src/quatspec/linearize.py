"""Real 4x4 matrices of real-linear maps on the quaternions.

A quaternion ``X = w + x i + y j + z k`` is identified with the column vector
``(w, x, y, z)``. Every map ``X -> sum_i P_i X Q_i`` is then a real 4x4 matrix,
``sum_i L(P_i) R(Q_i)``, where ``L`` and ``R`` are the matrices of left and right
multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import RankDeficientError
from .quat import Quaternion, as_qarray, qmul

DEFAULT_RANK_TOL = 1e-9


def _skew_left(v: np.ndarray) -> np.ndarray:
    x, y, z = v[..., 1], v[..., 2], v[..., 3]
    zero = np.zeros_like(x)
    return np.stack(
        (
            np.stack((zero, -x, -y, -z), axis=-1),
            np.stack((x, zero, -z, y), axis=-1),
            np.stack((y, z, zero, -x), axis=-1),
            np.stack((z, -y, x, zero), axis=-1),
        ),
        axis=-2,
    )


def _skew_right(v: np.ndarray) -> np.ndarray:
    u, v_, w = v[..., 1], v[..., 2], v[..., 3]
    zero = np.zeros_like(u)
    return np.stack(
        (
            np.stack((zero, -u, -v_, -w), axis=-1),
            np.stack((u, zero, w, -v_), axis=-1),
            np.stack((v_, -w, zero, u), axis=-1),
            np.stack((w, v_, -u, zero), axis=-1),
        ),
        axis=-2,
    )


def _basis(skew) -> np.ndarray:
    """The four matrices for the basis quaternions ``1, i, j, k``."""
    eye = np.eye(4)
    return np.array([eye] + [skew(eye[k]) for k in (1, 2, 3)])


_LEFT_BASIS = _basis(_skew_left)
_RIGHT_BASIS = _basis(_skew_right)


def left_matrix(p) -> np.ndarray:
    """``L(P) = Re(P) Id + A(P)``, the matrix of ``X -> P X``.

    Accepts a quaternion or a ``(..., 4)`` stack.
    """
    return np.einsum("...k,kij->...ij", as_qarray(p), _LEFT_BASIS)


def right_matrix(q) -> np.ndarray:
    """``R(Q) = Re(Q) Id + B(Q)``, the matrix of ``X -> X Q``.

    Accepts a quaternion or a ``(..., 4)`` stack.
    """
    return np.einsum("...k,kij->...ij", as_qarray(q), _RIGHT_BASIS)


@dataclass(frozen=True)
class BilateralForm:
    """The real-linear map ``X -> sum_i P_i X Q_i``.

    ``terms`` keeps insertion order so that serialised forms are stable.
    """

    terms: tuple[tuple[Quaternion, Quaternion], ...]

    def __init__(self, terms: Iterable[Sequence] = ()):
        object.__setattr__(
            self,
            "terms",
            tuple((Quaternion.coerce(p), Quaternion.coerce(q)) for p, q in terms),
        )

    def __call__(self, x) -> Quaternion:
        x = Quaternion.coerce(x)
        out = Quaternion()
        for p, q in self.terms:
            out = out + p * x * q
        return out

    def __add__(self, other: "BilateralForm") -> "BilateralForm":
        return BilateralForm(self.terms + other.terms)

    def matrix(self) -> np.ndarray:
        return bilateral_matrix(self)

    def to_list(self) -> list:
        return [[p.to_list(), q.to_list()] for p, q in self.terms]


def bilateral_matrix(form) -> np.ndarray:
    """``M = sum_i L(P_i) R(Q_i)`` for a :class:`BilateralForm` or a list of pairs.

    Pairs may hold ``(..., 4)`` arrays, in which case a stack of matrices is
    returned (used by the batched Newton iteration).
    """
    terms = form.terms if isinstance(form, BilateralForm) else form
    total = None
    for p, q in terms:
        m = left_matrix(p) @ right_matrix(q)
        total = m if total is None else total + m
    if total is None:
        return np.zeros((4, 4))
    return total


def apply_terms(terms, x: np.ndarray) -> np.ndarray:
    """Evaluate ``sum P_i X Q_i`` on quaternion arrays (broadcasting)."""
    total = 0.0
    for p, q in terms:
        total = total + qmul(qmul(p, x), q)
    return total


def numeric_rank(
    m: np.ndarray, tol: float = DEFAULT_RANK_TOL, scale: float = 1.0, atol: float = 0.0
) -> int:
    """Number of singular values at least ``max(tol * sigma_max, atol)``.

    The matrix counts as zero (rank 0) when ``sigma_max <= max(tol * scale, atol)``;
    ``scale`` is the magnitude the caller expects the entries to have and
    ``atol`` an absolute floor, e.g. the error inherited from an inexact point.
    """
    if tol < 0 or atol < 0:
        raise ValueError("tolerances must be nonnegative")
    s = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    smax = s[0] if s.size else 0.0
    if smax <= max(tol * scale, atol):
        return 0
    return int(np.count_nonzero(s >= max(tol * smax, atol)))


def sylvester_matrix(p, q) -> np.ndarray:
    """Matrix of the Sylvester operator ``X -> P X + X Q``."""
    p, q = as_qarray(p), as_qarray(q)
    t, x, y, z = p
    s, u, v, w = q
    return np.array(
        [
            [t + s, -x - u, -y - v, -z - w],
            [x + u, t + s, -z + w, y - v],
            [y + v, z - w, t + s, -x + u],
            [z + w, -y + v, x - u, t + s],
        ]
    )


def sylvester_det(p, q) -> float:
    """Closed-form determinant of :func:`sylvester_matrix`; always >= 0."""
    p, q = Quaternion.coerce(p), Quaternion.coerce(q)
    ts = p.w + q.w
    ip = p.x ** 2 + p.y ** 2 + p.z ** 2
    iq = q.x ** 2 + q.y ** 2 + q.z ** 2
    return ts ** 4 + 2.0 * ts ** 2 * (ip + iq) + (ip - iq) ** 2


def solve_bilateral(form: BilateralForm, rhs, tol: float = DEFAULT_RANK_TOL) -> Quaternion:
    """Solve ``sum_i P_i X Q_i = rhs`` for ``X``.

    Raises :class:`RankDeficientError` when the real 4x4 system is singular at
    relative tolerance ``tol``.
    """
    m = bilateral_matrix(form)
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    rank = numeric_rank(m, tol, scale=scale)
    if rank < 4:
        raise RankDeficientError(rank)
    x = np.linalg.solve(m, as_qarray(Quaternion.coerce(rhs)))
    return Quaternion(*x)
