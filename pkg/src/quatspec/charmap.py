"""Characteristic maps of 2x2 and 3x3 quaternionic matrices.

A characteristic map of ``A`` is a map ``mu: H -> H`` with
``norm_const * |mu(lam)| == Sdet(A - lam Id)``, so its zeros are exactly the left
eigenvalues of ``A``. Maps are stored as a kind tag plus the quaternion
coefficients of the defining formula; evaluation and differentials interpret
that formula, vectorised over arrays of points.

Matrix entries are named row by row::

    2x2: [[a, b],        3x3: [[a, b, c],
          [c, d]]              [f, g, h],
                               [p, q, r]]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

import numpy as np

from .errors import (
    ConsistencyError,
    DiagonalCaseError,
    DifferentialUndefinedError,
    PoleIsEigenvalueError,
    PolynomialCaseError,
)
from .linearize import BilateralForm, bilateral_matrix
from .quat import ZERO, Quaternion, as_qarray, qinv, qmul, qmul_chain, qnorm
from .sdet import as_qmatrix, inverse, max_norm, permute, sdet, shift

ZERO_TOL = 1e-12
POLE_TOL = 1e-9

_NAMES2 = ("a", "b", "c", "d")
_NAMES3 = ("a", "b", "c", "f", "g", "h", "p", "q", "r")
_ONE = np.array([1.0, 0.0, 0.0, 0.0])

# off-diagonal positions tried, in order, when looking for a zero entry
ZERO_SCAN = ((0, 2), (2, 0), (0, 1), (1, 0), (1, 2), (2, 1))

POLY3_KINDS = ("tri3", "block3", "block3r", "poly3")


def _is_zero(q: np.ndarray, scale: float) -> bool:
    return float(np.sqrt(q @ q)) <= ZERO_TOL * scale


def _coeffs(a: np.ndarray) -> dict:
    names = _NAMES2 if a.shape[0] == 2 else _NAMES3
    flat = a.reshape(-1, 4)
    return {name: Quaternion(*flat[k]) for k, name in enumerate(names)}


# -- formulas -------------------------------------------------------------------------
# Each evaluator takes a dict of (4,) coefficient arrays and a (..., 4) array of points.

def _eval(kind: str, C: dict, lam: np.ndarray) -> np.ndarray:
    m = qmul
    if kind == "tri2":
        return m(C["d"] - lam, C["a"] - lam)
    if kind == "poly2":
        return C["c"] - qmul_chain(C["d"] - lam, qinv(C["b"]), C["a"] - lam)
    a_l, g_l, r_l = C["a"] - lam, C["g"] - lam, C["r"] - lam
    if kind == "tri3":
        return qmul_chain(r_l, g_l, a_l)
    if kind == "block3":
        inner = C["q"] - qmul_chain(r_l, qinv(C["h"]), g_l)
        return m(inner, a_l)
    if kind == "block3r":
        inner = C["f"] - qmul_chain(g_l, qinv(C["b"]), a_l)
        return m(r_l, inner)
    if kind == "poly3":
        bi, hi = qinv(C["b"]), qinv(C["h"])
        inner = C["f"] - qmul_chain(g_l, bi, a_l)
        return C["p"] - qmul_chain(C["q"], bi, a_l) - qmul_chain(r_l, hi, inner)
    if kind == "rational3":
        return _eval_rational(C, lam)
    raise ValueError(f"unknown characteristic map kind {kind!r}")


def _rational_parts(C: dict, lam: np.ndarray):
    ci = qinv(C["c"])
    a_l, r_l = C["a"] - lam, C["r"] - lam
    p2 = C["p"] - qmul_chain(r_l, ci, a_l)
    q1 = C["q"] - qmul_chain(r_l, ci, C["b"])
    f1 = C["f"] - qmul_chain(C["h"], ci, a_l)
    return ci, a_l, r_l, p2, q1, f1


def _eval_rational(C: dict, lam: np.ndarray) -> np.ndarray:
    pole = C["pole"]
    _, _, _, p2, q1, f1 = _rational_parts(C, lam)
    u = pole - lam
    at_pole = ~np.any(u != 0.0, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = qmul(u, p2 - qmul_chain(q1, qinv(u), f1))
    if np.any(at_pole):
        val = np.where(at_pole[..., None], qmul(q1, f1), val)
    return val


def _diff_terms(kind: str, C: dict, lam: np.ndarray) -> list:
    """Pairs ``(P, Q)`` with ``d mu_lam(X) = sum P X Q``."""
    one = _ONE
    if kind == "tri2":
        return [(-one, C["a"] - lam), (-(C["d"] - lam), one)]
    if kind == "poly2":
        bi = qinv(C["b"])
        return [(one, qmul(bi, C["a"] - lam)), (qmul(C["d"] - lam, bi), one)]
    a_l, g_l, r_l = C["a"] - lam, C["g"] - lam, C["r"] - lam
    if kind == "tri3":
        return [
            (-one, qmul(g_l, a_l)),
            (-qmul(r_l, g_l), one),
            (-r_l, a_l),
        ]
    if kind == "block3":
        hi = qinv(C["h"])
        inner = C["q"] - qmul_chain(r_l, hi, g_l)
        return [
            (one, qmul_chain(hi, g_l, a_l)),
            (-inner, one),
            (qmul(r_l, hi), a_l),
        ]
    if kind == "block3r":
        bi = qinv(C["b"])
        inner = C["f"] - qmul_chain(g_l, bi, a_l)
        return [
            (-one, inner),
            (r_l, qmul(bi, a_l)),
            (qmul_chain(r_l, g_l, bi), one),
        ]
    if kind == "poly3":
        bi, hi = qinv(C["b"]), qinv(C["h"])
        inner = C["f"] - qmul_chain(g_l, bi, a_l)
        return [
            (qmul(C["q"], bi) - qmul_chain(r_l, hi, g_l, bi), one),
            (one, qmul(hi, inner)),
            (-qmul(r_l, hi), qmul(bi, a_l)),
        ]
    if kind == "rational3":
        ci, a_l, r_l, p2, q1, f1 = _rational_parts(C, lam)
        u = C["pole"] - lam
        ui = qinv(u)
        uq1ui = qmul_chain(u, q1, ui)
        return [
            (one, -p2 + qmul_chain(q1, ui, f1)),
            (u, qmul(ci, a_l)),
            (qmul_chain(u, r_l, ci) - qmul_chain(uq1ui, C["h"], ci), one),
            (-u, qmul_chain(ci, C["b"], ui, f1)),
            (-uq1ui, qmul(ui, f1)),
        ]
    raise ValueError(f"unknown characteristic map kind {kind!r}")


@dataclass(frozen=True, eq=False)
class CharMap:
    """An evaluable characteristic map.

    ``matrix`` is the matrix whose Study determinant the map reproduces, i.e.
    ``norm_const * |self(lam)| == Sdet(matrix - lam Id)``. ``coeffs`` are the
    entries of ``permute(matrix, permutation)``. Roots ``rho`` of the map become
    left eigenvalues of the original matrix through :meth:`back`, which is the
    identity except for ``inverse-reduced3`` maps (``rho -> rho^-1 + shift``).
    """

    kind: str
    coeffs: dict
    degree: int
    norm_const: float
    matrix: np.ndarray = field(repr=False)
    pole: Optional[Quaternion] = None
    permutation: tuple = ()
    base_kind: str = ""
    invert: bool = False
    shift: Quaternion = ZERO

    def __post_init__(self):
        if not self.base_kind:
            object.__setattr__(self, "base_kind", self.kind)
        arrays = {k: np.array(v, dtype=float) for k, v in self.coeffs.items()}
        if self.pole is not None:
            arrays["pole"] = np.array(self.pole, dtype=float)
        object.__setattr__(self, "_arrays", arrays)

    # -- evaluation -------------------------------------------------------------------
    def evaluate(self, lam) -> np.ndarray:
        """Vectorised evaluation on a ``(..., 4)`` array."""
        return _eval(self.base_kind, self._arrays, as_qarray(lam))

    def __call__(self, lam) -> Quaternion:
        return Quaternion(*self.evaluate(Quaternion.coerce(lam)))

    def diff_terms(self, lam) -> list:
        lam = as_qarray(lam)
        if (
            self.base_kind == "rational3"
            and lam.ndim == 1
            and qnorm(self._arrays["pole"] - lam) <= ZERO_TOL * self.scale
        ):
            raise DifferentialUndefinedError("differential undefined at pole")
        return _diff_terms(self.base_kind, self._arrays, lam)

    def diff(self, lam) -> BilateralForm:
        """Differential at ``lam`` (in the map's own variable), zero terms dropped."""
        terms = self.diff_terms(Quaternion.coerce(lam))
        pairs = []
        for p, q in terms:
            p = np.broadcast_to(p, (4,))
            q = np.broadcast_to(q, (4,))
            if p.any() and q.any():
                pairs.append((p, q))
        return BilateralForm(pairs)

    def jacobian(self, lam) -> np.ndarray:
        """Real 4x4 (or stacked) Jacobian at ``lam``."""
        return bilateral_matrix(self.diff_terms(lam))

    def back(self, rho) -> Quaternion:
        """Left eigenvalue of the original matrix corresponding to a root ``rho``."""
        rho = Quaternion.coerce(rho)
        if self.invert:
            rho = rho.inv()
        return rho + self.shift

    def back_array(self, rho: np.ndarray) -> np.ndarray:
        rho = as_qarray(rho)
        if self.invert:
            rho = qinv(rho)
        return rho + np.array(self.shift)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    @property
    def scale(self) -> float:
        return 1.0 + max_norm(self.matrix)

    @property
    def leading_norm(self) -> float:
        """``lim |mu(lam)| / |lam|^degree`` as ``|lam| -> infinity``."""
        return 1.0 / self.norm_const

    def jacobian_scale(self, lam) -> float:
        """Typical size of the Jacobian entries near ``lam``."""
        lam = Quaternion.coerce(lam)
        return (self.scale + abs(lam)) ** (self.degree - 1) / self.norm_const

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "base_kind": self.base_kind,
            "degree": self.degree,
            "norm_const": self.norm_const,
            "pole": None if self.pole is None else self.pole.to_list(),
            "permutation": list(self.permutation),
            "invert": self.invert,
            "shift": self.shift.to_list(),
            "coefficients": {k: v.to_list() for k, v in self.coeffs.items()},
        }


def _verify(cmap: CharMap) -> CharMap:
    """Check the normalisation at one fixed pseudo-random point."""
    rng = np.random.default_rng(20240607)
    lam = rng.standard_normal(4) * cmap.scale
    if cmap.pole is not None and qnorm(lam - np.array(cmap.pole)) < 1e-3 * cmap.scale:
        lam = lam + cmap.scale
    lhs = cmap.norm_const * float(qnorm(cmap.evaluate(lam)))
    rhs = sdet(shift(cmap.matrix, lam))
    floor = 1e-12 * (cmap.scale + float(qnorm(lam))) ** cmap.order
    if abs(lhs - rhs) > 1e-6 * max(lhs, rhs) + floor:
        raise ConsistencyError(
            f"{cmap.kind} map normalisation mismatch: {lhs!r} vs Sdet {rhs!r}"
        )
    return cmap


# -- 2x2 -------------------------------------------------------------------------------
def char2(a) -> CharMap:
    """Characteristic map of a 2x2 matrix.

    Uses ``mu(lam) = c - (d - lam) b^-1 (a - lam)`` (kind ``poly2``), swapping the
    two indices first when ``b`` vanishes. A diagonal matrix gets
    ``(d - lam)(a - lam)`` (kind ``tri2``).
    """
    a = as_qmatrix(a, 2)
    scale = 1.0 + max_norm(a)
    b_zero, c_zero = _is_zero(a[0, 1], scale), _is_zero(a[1, 0], scale)
    if b_zero and c_zero:
        return _verify(CharMap("tri2", _coeffs(a), 2, 1.0, a, permutation=(0, 1)))
    perm = (1, 0) if b_zero else (0, 1)
    ap = permute(a, perm)
    coeffs = _coeffs(ap)
    return _verify(CharMap("poly2", coeffs, 2, abs(coeffs["b"]), a, permutation=perm))


def companion2(a) -> tuple[Quaternion, Quaternion, Quaternion]:
    """``(a0, a1, delta)`` with ``a0 = -b^-1 c``, ``a1 = b^-1 (a - d)``, ``delta = a1^2 - 4 a0``.

    The left spectrum of ``A`` is ``a + b * S`` where ``S`` is the left spectrum of
    the companion matrix ``[[0, 1], [-a0, -a1]]``.
    """
    a = as_qmatrix(a, 2)
    scale = 1.0 + max_norm(a)
    b_zero, c_zero = _is_zero(a[0, 1], scale), _is_zero(a[1, 0], scale)
    if b_zero and c_zero:
        raise DiagonalCaseError("diagonal/triangular case: spectrum is the diagonal")
    if b_zero:
        a = permute(a, (1, 0))
    C = _coeffs(a)
    bi = C["b"].inv()
    a0 = -(bi * C["c"])
    a1 = bi * (C["a"] - C["d"])
    return a0, a1, a1 * a1 - 4.0 * a0


def diff2(a, lam) -> BilateralForm:
    """Differential ``X -> X b^-1 (a - lam) + (d - lam) b^-1 X`` of :func:`char2`."""
    return char2(a).diff(lam)


# -- 3x3 -------------------------------------------------------------------------------
def _classify_zero(ap: np.ndarray, scale: float) -> str:
    b_zero = _is_zero(ap[0, 1], scale)
    h_zero = _is_zero(ap[1, 2], scale)
    if b_zero:
        return "tri3" if h_zero else "block3"
    return "block3r" if h_zero else "poly3"


def _norm_const(kind: str, C: dict) -> float:
    if kind == "tri3":
        return 1.0
    if kind == "block3":
        return abs(C["h"])
    if kind == "block3r":
        return abs(C["b"])
    if kind == "poly3":
        return abs(C["b"]) * abs(C["h"])
    return abs(C["c"])


def _pole_of(C: dict) -> Quaternion:
    return C["g"] - C["h"] * C["c"].inv() * C["b"]


def _rational(a: np.ndarray, perm: tuple) -> CharMap:
    ap = permute(a, perm)
    C = _coeffs(ap)
    return CharMap("rational3", C, 3, abs(C["c"]), a, pole=_pole_of(C), permutation=perm)


def rational_map(a, perm=(0, 1, 2)) -> CharMap:
    """Rational map of ``A`` built on ``P A P^-1`` for the permutation ``perm``.

    Any such map is a characteristic map of ``A`` itself since a real
    permutation similarity keeps the left spectrum. Requires the entry that
    lands at position (1,3) to be nonzero.
    """
    a = as_qmatrix(a, 3)
    perm = tuple(perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"not a permutation of (0, 1, 2): {perm}")
    if _is_zero(permute(a, perm)[0, 2], 1.0 + max_norm(a)):
        raise PolynomialCaseError("entry (1,3) is zero: polynomial case, no pole")
    return _verify(_rational(a, perm))


def char3(a) -> CharMap:
    """Characteristic map of a 3x3 matrix.

    If some off-diagonal entry vanishes (scanned in :data:`ZERO_SCAN` order), a
    real permutation similarity moves it to position (1,3) and a polynomial map
    of degree 3 is used:

    * ``tri3``    ``(r-lam)(g-lam)(a-lam)`` when ``b = h = 0``
    * ``block3``  ``(q - (r-lam) h^-1 (g-lam)) (a-lam)`` when ``b = 0 != h``
    * ``poly3``   ``p - q b^-1 (a-lam) - (r-lam) h^-1 (f - (g-lam) b^-1 (a-lam))``
    * ``block3r`` ``(r-lam)(f - (g-lam) b^-1 (a-lam))`` when ``h = 0 != b``

    Otherwise the map is rational (kind ``rational3``) with pole
    ``g - h c^-1 b``.
    """
    a = as_qmatrix(a, 3)
    scale = 1.0 + max_norm(a)
    found = []
    for i, j in ZERO_SCAN:
        if not _is_zero(a[i, j], scale):
            continue
        perm = (i, 3 - i - j, j)
        kind = _classify_zero(permute(a, perm), scale)
        found.append((perm, kind))
        if kind != "block3r":
            break
    if found:
        perm, kind = next((f for f in found if f[1] != "block3r"), found[0])
        C = _coeffs(permute(a, perm))
        return _verify(CharMap(kind, C, 3, _norm_const(kind, C), a, permutation=perm))
    return _verify(_rational(a, (0, 1, 2)))


def pole(a) -> Quaternion:
    """The pole ``g - h c^-1 b`` of a 3x3 matrix with ``c != 0``."""
    a = as_qmatrix(a, 3)
    if _is_zero(a[0, 2], 1.0 + max_norm(a)):
        raise PolynomialCaseError("entry (1,3) is zero: polynomial case, no pole")
    return _pole_of(_coeffs(a))


def pole_is_eigenvalue(a, tol: float = POLE_TOL) -> bool:
    """Whether the pole is a left eigenvalue, i.e. the rational map is continuous."""
    a = as_qmatrix(a, 3)
    pi = pole(a)
    return sdet(shift(a, pi)) <= tol * (1.0 + max_norm(a)) ** 3


def all_poles(a, tol: float = POLE_TOL) -> list[dict]:
    """Pole of ``P A P^-1`` for each of the six permutation matrices ``P``."""
    a = as_qmatrix(a, 3)
    out = []
    for perm in permutations(range(3)):
        ap = permute(a, perm)
        try:
            pi = pole(ap)
        except PolynomialCaseError:
            out.append({"permutation": list(perm), "pole": None, "eigenvalue": None})
            continue
        out.append(
            {"permutation": list(perm), "pole": pi, "eigenvalue": pole_is_eigenvalue(ap, tol)}
        )
    return out


def reduce_discontinuous(a, tol: float = POLE_TOL) -> CharMap:
    """Polynomial map of ``B^-1`` where ``B = A - pole * Id``.

    Requires the pole not to be an eigenvalue, so ``B`` is invertible. The
    (1,3) entry of ``B^-1`` vanishes, which makes its map polynomial; a root
    ``rho`` corresponds to the eigenvalue ``rho^-1 + pole`` of ``A``.
    """
    a = as_qmatrix(a, 3)
    pi = pole(a)
    if pole_is_eigenvalue(a, tol):
        raise PoleIsEigenvalueError("pole is an eigenvalue; use continuous path")
    b = shift(a, pi)
    binv = inverse(b)
    corner = float(qnorm(binv[0, 2]))
    if corner > 1e-8 * (1.0 + max_norm(binv)):
        raise ConsistencyError(f"entry (1,3) of B^-1 should vanish, got norm {corner:.3e}")
    binv[0, 2] = 0.0
    inner = char3(binv)
    return _verify(CharMap(
        "inverse-reduced3",
        inner.coeffs,
        3,
        inner.norm_const,
        binv,
        permutation=inner.permutation,
        base_kind=inner.kind,
        invert=True,
        shift=pi,
    ))


def diff3(a, lam, cmap: Optional[CharMap] = None) -> BilateralForm:
    """Differential at ``lam`` of the characteristic map of a 3x3 matrix.

    ``cmap`` defaults to ``char3(a)``. For an ``inverse-reduced3`` map, ``lam`` is
    a point of the original variable and the returned form is the differential
    of ``lam -> mu((lam - pole)^-1)``.
    """
    if cmap is None:
        cmap = char3(a)
    lam = Quaternion.coerce(lam)
    if cmap.kind != "inverse-reduced3":
        return cmap.diff(lam)
    offset = lam - cmap.shift
    if abs(offset) <= ZERO_TOL * cmap.scale:
        raise DifferentialUndefinedError("differential undefined at pole")
    u = offset.inv()
    inner = cmap.diff(u)
    return BilateralForm((-(p * u), u * q) for p, q in inner.terms)


def pullback(cmap: CharMap, lam) -> Quaternion:
    """``mu(psi(lam))`` where ``psi`` inverts :meth:`CharMap.back`."""
    lam = Quaternion.coerce(lam)
    rho = lam - cmap.shift
    if cmap.invert:
        rho = rho.inv()
    return cmap(rho)
