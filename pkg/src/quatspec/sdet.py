"""Study determinant, quasideterminants and inversion of quaternionic matrices.

Matrices are numpy arrays of shape ``(n, n, 4)``. Indices in this module are
zero-based.
"""
from __future__ import annotations

import math
from itertools import product as iproduct
from typing import Optional, Sequence

import numpy as np

from .errors import ConsistencyError, SingularMatrixError
from .quat import Quaternion, as_qarray, inv, parse_quaternion, qconj, qeye, qinv, qmatmul, qmul

NULL_TOL = 1e-12
SINGULAR_TOL = 1e-12


def _entry(value) -> np.ndarray:
    if isinstance(value, str):
        return np.array(parse_quaternion(value), dtype=float)
    return as_qarray(value)


def as_qmatrix(a, n: Optional[int] = None) -> np.ndarray:
    """Validate and convert ``a`` to a float array of shape ``(n, n, 4)``.

    Accepts such an array, or nested rows whose entries are quaternions, real
    numbers, 4-sequences or strings like ``"1-2i+k"``.
    """
    if isinstance(a, np.ndarray) and a.dtype.kind == "f" and a.ndim == 3:
        arr = a.astype(float, copy=False)
    else:
        rows = list(a)
        arr = np.array([[_entry(e) for e in row] for row in rows], dtype=float)
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
        raise ValueError(f"expected a square quaternionic matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("empty matrix")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"expected order {n}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def max_norm(a: np.ndarray) -> float:
    """Largest entry norm."""
    return float(np.sqrt((a * a).sum(axis=-1)).max(initial=0.0))


def entry(a: np.ndarray, i: int, j: int) -> Quaternion:
    return Quaternion(*a[i, j])


def to_lists(a: np.ndarray) -> list:
    return a.tolist()


def permute(a: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """``P A P^-1`` for the permutation matrix sending row ``perm[k]`` to row ``k``."""
    perm = list(perm)
    return a[np.ix_(perm, perm)]


def submatrix(a: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    return a[np.ix_(list(rows), list(cols))]


def complement(a: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    """Matrix left after deleting ``rows`` and ``cols``."""
    n = a.shape[0]
    keep_r = [r for r in range(n) if r not in set(rows)]
    keep_c = [c for c in range(n) if c not in set(cols)]
    return a[np.ix_(keep_r, keep_c)]


def shift(a: np.ndarray, lam) -> np.ndarray:
    """``A - lam * Id``."""
    out = np.array(a, dtype=float, copy=True)
    idx = np.arange(a.shape[0])
    out[idx, idx] -= as_qarray(lam)
    return out


def complex_adjoint(a) -> np.ndarray:
    """The ``2n x 2n`` complex matrix ``[[X, -conj(Y)], [Y, conj(X)]]`` of ``A = X + jY``."""
    a = as_qmatrix(a)
    x = a[..., 0] + 1j * a[..., 1]
    y = a[..., 2] - 1j * a[..., 3]
    return np.block([[x, -np.conj(y)], [y, np.conj(x)]])


def sdet(a) -> float:
    """Study determinant ``sqrt(det c(A))``."""
    c = complex_adjoint(a)
    d = np.linalg.det(c).real
    if d < 0.0:
        hadamard = float(np.prod(np.linalg.norm(c, axis=1)))
        if d < -1e-10 * max(hadamard, 1e-300):
            raise ConsistencyError(f"det of complex adjoint is negative ({d:.3e})")
        return 0.0
    return math.sqrt(d)


def is_singular(a, tol: float = SINGULAR_TOL) -> bool:
    a = as_qmatrix(a)
    return sdet(a) <= tol * (1.0 + max_norm(a)) ** a.shape[0]


# -- quasideterminants ------------------------------------------------------------
class _Quasi:
    """Memoised recursive quasideterminants of one matrix."""

    def __init__(self, a: np.ndarray, null_tol: float = NULL_TOL):
        self.a = a
        self.scale = 1.0 + max_norm(a)
        self.null_tol = null_tol
        self._cache: dict = {}
        self._inv_cache: dict = {}

    def invertible(self, rows: tuple, cols: tuple) -> bool:
        key = (rows, cols)
        if key not in self._inv_cache:
            s = sdet(submatrix(self.a, rows, cols))
            self._inv_cache[key] = s > self.null_tol * self.scale ** len(rows)
        return self._inv_cache[key]

    def __call__(self, rows: tuple, cols: tuple, i: int, j: int) -> Optional[np.ndarray]:
        key = (rows, cols, i, j)
        if key in self._cache:
            return self._cache[key]
        a = self.a
        if len(rows) == 1:
            val = a[i, j]
        else:
            sub_rows = tuple(r for r in rows if r != i)
            sub_cols = tuple(c for c in cols if c != j)
            if not self.invertible(sub_rows, sub_cols):
                val = None
            else:
                val = a[i, j].copy()
                for p, q in iproduct(sub_rows, sub_cols):
                    lower = self(sub_rows, sub_cols, p, q)
                    if lower is None:
                        continue
                    val = val - qmul(qmul(a[i, q], qinv(lower)), a[p, j])
        self._cache[key] = val
        return val


def quasidet(a, i: int, j: int, null_tol: float = NULL_TOL) -> Optional[Quaternion]:
    """The ``(i, j)`` quasideterminant, or ``None`` where it is undefined.

    Uses the recursive expansion over the submatrix ``A^{i,j}`` (row ``i`` and
    column ``j`` removed). The quasideterminant is undefined exactly when that
    submatrix is singular; terms whose lower-order quasideterminant is
    undefined contribute nothing.
    """
    a = as_qmatrix(a)
    n = a.shape[0]
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"index ({i}, {j}) out of range for order {n}")
    val = _Quasi(a, null_tol)(tuple(range(n)), tuple(range(n)), i, j)
    return None if val is None else Quaternion(*val)


def _gauss_jordan_inverse(a: np.ndarray) -> np.ndarray:
    """Inverse by Gauss-Jordan elimination with left row operations."""
    n = a.shape[0]
    m = np.array(a, dtype=float, copy=True)
    out = qeye(n)
    for col in range(n):
        norms = np.sqrt((m[col:, col] ** 2).sum(axis=-1))
        piv = col + int(np.argmax(norms))
        if norms[piv - col] == 0.0:
            raise SingularMatrixError(0.0)
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            out[[col, piv]] = out[[piv, col]]
        pinv = qinv(m[col, col])
        m[col] = qmul(pinv, m[col])
        out[col] = qmul(pinv, out[col])
        for r in range(n):
            if r == col:
                continue
            factor = m[r, col].copy()
            if not factor.any():
                continue
            m[r] = m[r] - qmul(factor, m[col])
            out[r] = out[r] - qmul(factor, out[col])
    return out


def inverse(a, tol: float = SINGULAR_TOL) -> np.ndarray:
    """Inverse of a quaternionic matrix.

    Entries come from quasideterminants, ``(A^-1)_{ij} = |A|_{ji}^-1`` (zero where
    the quasideterminant is undefined). If the result fails the residual check
    the matrix is inverted again by Gauss-Jordan elimination.

    Raises :class:`SingularMatrixError` when ``Sdet(A)`` is numerically zero.
    """
    a = as_qmatrix(a)
    n = a.shape[0]
    s = sdet(a)
    scale = 1.0 + max_norm(a)
    if s <= tol * scale ** n:
        raise SingularMatrixError(s)
    quasi = _Quasi(a)
    full = tuple(range(n))
    out = np.zeros_like(a)
    ok = True
    for i, j in iproduct(range(n), range(n)):
        qd = quasi(full, full, j, i)
        if qd is None:
            continue
        if not np.all(np.isfinite(qd)) or not qd.any():
            ok = False
            break
        out[i, j] = qinv(qd)
    if ok:
        eye = qeye(n)
        bound = 1e-9 * n * scale * (1.0 + max_norm(out))
        resid = max(np.abs(qmatmul(a, out) - eye).max(), np.abs(qmatmul(out, a) - eye).max())
        ok = bool(np.isfinite(resid)) and resid <= bound
    if not ok:
        out = _gauss_jordan_inverse(a)
    return out


def identity(n: int) -> np.ndarray:
    return qeye(n)


def diag(values) -> np.ndarray:
    vals = [as_qarray(Quaternion.coerce(v) if not isinstance(v, str) else parse_quaternion(v))
            for v in values]
    n = len(vals)
    out = np.zeros((n, n, 4))
    for k, v in enumerate(vals):
        out[k, k] = v
    return out


def conj_transpose(a: np.ndarray) -> np.ndarray:
    return qconj(np.swapaxes(a, 0, 1))


__all__ = [
    "as_qmatrix",
    "complement",
    "complex_adjoint",
    "diag",
    "identity",
    "inverse",
    "is_singular",
    "max_norm",
    "permute",
    "quasidet",
    "sdet",
    "shift",
    "submatrix",
    "inv",
]
