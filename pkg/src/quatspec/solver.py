"""Left spectra of 2x2 and 3x3 quaternionic matrices.

Roots of characteristic maps are found by a damped Newton iteration whose
Jacobian is the real 4x4 matrix of the exact differential; all starting points
are iterated together as one batch. Triangular and block triangular matrices,
and 2x2 matrices with real companion coefficients, are solved in closed form.
Every reported root is checked against the Study determinant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import permutations
from typing import NamedTuple, Optional

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

from .charmap import (
    ZERO_TOL,
    CharMap,
    char2,
    char3,
    companion2,
    diff3,
    pole_is_eigenvalue,
    rational_map,
    reduce_discontinuous,
)
from .errors import DiagonalCaseError, DifferentialUndefinedError, NoRootFoundError
from .linearize import bilateral_matrix, numeric_rank
from .quat import Quaternion, qnorm
from .sdet import as_qmatrix, complex_adjoint, max_norm, sdet, shift

REAL_TOL = 1e-10
POLISH_STEPS = 40
MAX_HALVINGS = 20
POLISH_HALVINGS = 2
_ALPHAS = 0.5 ** np.arange(MAX_HALVINGS + 1)
POLE_EXCLUSION = 1e-3
RESIDUAL_FLOOR = 1e-12

_AXES = np.array(
    [
        [0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, -1.0],
    ]
)


@dataclass(frozen=True)
class SolverConfig:
    tol_residual: float = 1e-10
    tol_cluster: float = 1e-6
    max_iter: int = 100
    n_starts: int = 64
    seed: int = 0
    rank_tol: float = 1e-9

    def __post_init__(self):
        for name in ("tol_residual", "tol_cluster", "rank_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        for name in ("max_iter", "n_starts"):
            value = getattr(self, name)
            if not (isinstance(value, (int, np.integer)) and value > 0):
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not (isinstance(self.seed, (int, np.integer)) and self.seed >= 0):
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")


class NewtonResult(NamedTuple):
    root: Optional[Quaternion]
    iters: int
    converged: bool
    residual: float
    step: float


class RootInfo(NamedTuple):
    value: Quaternion
    residual: float
    diff_rank: Optional[int]
    newton_iters: int


@dataclass(frozen=True)
class SphericalFamily:
    """The eigenvalue sphere ``{center + b q / 2 : q^2 = delta}`` with ``delta < 0``."""

    center: Quaternion
    b: Quaternion
    delta: float

    @property
    def radius(self) -> float:
        return abs(self.b) * math.sqrt(-self.delta) / 2.0

    def point(self, direction) -> Quaternion:
        """Eigenvalue for the pure imaginary unit ``direction``."""
        u = np.array(Quaternion.coerce(direction), dtype=float)
        u[0] = 0.0
        norm = float(np.linalg.norm(u))
        if norm == 0.0:
            raise ValueError("direction must have a nonzero imaginary part")
        q = Quaternion(*(u * math.sqrt(-self.delta) / norm))
        return self.center + self.b * q * 0.5

    def points(self, m: int) -> list[Quaternion]:
        """``m`` deterministic samples: the six axis directions, then a spiral."""
        dirs = [row[1:] for row in _AXES[3:]]
        golden = math.pi * (3.0 - math.sqrt(5.0))
        k = 0
        while len(dirs) < m:
            z = 1.0 - 2.0 * (k + 0.5) / max(m, 1)
            r = math.sqrt(max(0.0, 1.0 - z * z))
            dirs.append(np.array([r * math.cos(golden * k), r * math.sin(golden * k), z]))
            k += 1
        return [self.point(Quaternion(0.0, *d)) for d in dirs[:m]]

    def to_dict(self) -> dict:
        return {
            "center": self.center.to_list(),
            "b": self.b.to_list(),
            "delta": self.delta,
            "radius": self.radius,
            "parametrization": "center + b*q/2 with q pure imaginary, |q|^2 = -delta",
        }


@dataclass(frozen=True)
class SpectrumReport:
    kind: str
    roots: tuple
    spherical: Optional[SphericalFamily]
    classification_path: str
    degree: int
    n: int

    def values(self) -> list[Quaternion]:
        return [r.value for r in self.roots]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "degree": self.degree,
            "classification_path": self.classification_path,
            "roots": [
                {
                    "value": r.value.to_list(),
                    "residual": r.residual,
                    "diff_rank": r.diff_rank,
                    "newton_iters": r.newton_iters,
                }
                for r in self.roots
            ],
            "spherical": None if self.spherical is None else self.spherical.to_dict(),
        }


class _Cand(NamedTuple):
    value: np.ndarray
    delta: float  # estimated distance to the true root
    iters: int
    exact: bool


def _exact(q) -> _Cand:
    return _Cand(np.array(Quaternion.coerce(q), dtype=float), 0.0, 0, True)


# -- oracles ----------------------------------------------------------------------------
def eigen_bound(a) -> float:
    """Operator norm of ``A``; every left eigenvalue has at most this norm."""
    return float(np.linalg.norm(complex_adjoint(a), 2))


def sigma_oracle(a, lam) -> float:
    """``det [[X - x, -conj(Y) + conj(y)], [Y - y, conj(X) - conj(x)]]``.

    Here ``A = X + jY`` and ``lam = x + jy`` with complex ``X, Y, x, y``. The
    value equals ``Sdet(A - lam Id)**2``.
    """
    a = as_qmatrix(a)
    lam = Quaternion.coerce(lam)
    n = a.shape[0]
    X = a[..., 0] + 1j * a[..., 1]
    Y = a[..., 2] - 1j * a[..., 3]
    x = lam.w + 1j * lam.x
    y = lam.y - 1j * lam.z
    eye = np.eye(n)
    m = np.block(
        [
            [X - x * eye, -np.conj(Y) + np.conj(y) * eye],
            [Y - y * eye, np.conj(X) - np.conj(x) * eye],
        ]
    )
    return float(np.linalg.det(m).real)


def start_points(bound: float, n_starts: int, seed: int) -> np.ndarray:
    """Axis points scaled by ``bound`` then uniform points in the ball of radius ``1.25 bound``."""
    rng = np.random.default_rng(seed)
    extra = max(n_starts - len(_AXES), 0)
    g = rng.standard_normal((extra, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    radii = 1.25 * bound * rng.random(extra) ** 0.25
    pts = np.concatenate([_AXES * bound, g * radii[:, None]])
    return pts[:n_starts]


# -- Newton -----------------------------------------------------------------------------
_SEARCH, _POLISH, _DONE, _FAIL = 0, 1, 2, 3


def _residual_floor(cmap: CharMap, lam: np.ndarray, tol: float) -> np.ndarray:
    return tol * (cmap.scale + qnorm(lam)) ** cmap.degree / cmap.norm_const


def _newton_steps(jac: np.ndarray, val: np.ndarray) -> np.ndarray:
    """``J^-1 val`` row by row; NaN where ``J`` is singular or not finite."""
    out = np.full(val.shape, np.nan)
    finite = np.all(np.isfinite(jac), axis=(-2, -1)) & np.all(np.isfinite(val), axis=-1)
    idx = np.flatnonzero(finite)
    if idx.size == 0:
        return out
    s = np.linalg.svd(jac[idx], compute_uv=False)
    idx = idx[s[:, -1] > 1e-14 * s[:, 0]]
    if idx.size:
        out[idx] = np.linalg.solve(jac[idx], val[idx][..., None])[..., 0]
    return out


def _newton_batch(cmap: CharMap, starts: np.ndarray, cfg: SolverConfig, polish: int = POLISH_STEPS):
    """Run Newton from every row of ``starts`` at once.

    A start converges once ``|mu| <= tol_residual * (scale + |lam|)^deg / kappa``;
    it is then polished for up to ``polish`` further steps while ``|mu|`` keeps
    decreasing. Returns ``(points, converged, iters, |mu|, last_step)``.
    """
    lam = np.array(starts, dtype=float, copy=True).reshape(-1, 4)
    m = lam.shape[0]
    with np.errstate(all="ignore"):
        val = cmap.evaluate(lam)
    res = qnorm(val)
    res = np.where(np.isfinite(res), res, np.inf)
    iters = np.zeros(m, dtype=int)
    step = np.zeros(m)
    polish_left = np.full(m, polish)
    reached = res <= _residual_floor(cmap, lam, cfg.tol_residual)
    state = np.where(reached, _POLISH, _SEARCH)
    state[res == 0.0] = _DONE
    state[~np.isfinite(res)] = _FAIL
    if polish <= 0:
        state[state == _POLISH] = _DONE

    for _ in range(cfg.max_iter + polish):
        idx = np.flatnonzero((state == _SEARCH) | (state == _POLISH))
        if idx.size == 0:
            break
        was = state[idx].copy()
        with np.errstate(all="ignore"):
            d = _newton_steps(cmap.jacobian(lam[idx]), val[idx])
        # all step lengths 1, 1/2, ..., 2^-MAX_HALVINGS are tried in one evaluation;
        # the first that lowers |mu| wins (polishing only allows the first few)
        trial = lam[idx][None] - _ALPHAS[:, None, None] * d[None]
        with np.errstate(all="ignore"):
            tval = cmap.evaluate(trial)
        tres = qnorm(tval)
        good = np.isfinite(tres) & (tres < res[idx][None])
        good[POLISH_HALVINGS:, was == _POLISH] = False
        accepted = good.any(axis=0)
        first = np.argmax(good, axis=0)
        rows = np.flatnonzero(accepted)
        gi, fk = idx[rows], first[rows]
        lam[gi], val[gi], res[gi] = trial[fk, rows], tval[fk, rows], tres[fk, rows]
        step[gi] = _ALPHAS[fk] * qnorm(d[rows])

        state[idx[~accepted & (was == _SEARCH)]] = _FAIL
        state[idx[~accepted & (was == _POLISH)]] = _DONE
        acc_s = idx[accepted & (was == _SEARCH)]
        acc_p = idx[accepted & (was == _POLISH)]
        iters[acc_s] += 1
        conv = res[acc_s] <= _residual_floor(cmap, lam[acc_s], cfg.tol_residual)
        reached[acc_s[conv]] = True
        state[acc_s[conv]] = _POLISH if polish > 0 else _DONE
        state[acc_s[~conv & (iters[acc_s] >= cfg.max_iter)]] = _FAIL
        polish_left[acc_p] -= 1
        state[acc_p[polish_left[acc_p] <= 0]] = _DONE
        state[(res == 0.0) & (state == _POLISH)] = _DONE

    ok = reached & (state != _FAIL)
    return lam, ok, iters, res, step


def newton(cmap: CharMap, start, cfg: Optional[SolverConfig] = None) -> NewtonResult:
    """Damped Newton iteration on ``cmap`` from one start.

    Failure (no convergence within ``max_iter``, a stalled step or a singular
    Jacobian away from a root) is reported through ``converged=False``.
    """
    cfg = cfg or SolverConfig()
    lam, ok, iters, res, step = _newton_batch(cmap, np.array(Quaternion.coerce(start))[None], cfg)
    root = Quaternion(*lam[0]) if ok[0] else None
    return NewtonResult(root, int(iters[0]), bool(ok[0]), float(res[0]), float(step[0]))


def _newton_candidates(cmap: CharMap, cfg: SolverConfig, exclude=None, seed=None) -> list:
    starts = start_points(eigen_bound(cmap.matrix), cfg.n_starts, cfg.seed if seed is None else seed)
    if exclude is not None:
        center, radius = exclude
        starts = starts[qnorm(starts - np.array(center)) > radius]
    if len(starts) == 0:
        return []
    lam, ok, iters, _, step = _newton_batch(cmap, starts, cfg)
    eps = 1e-15 * cmap.scale
    return [_Cand(lam[k], 2.0 * step[k] + eps, int(iters[k]), False) for k in np.flatnonzero(ok)]


def _polish(cmap: CharMap, a: np.ndarray, cands: list, cfg: SolverConfig) -> list:
    """Re-run Newton on ``cmap`` from inexact candidates, keeping improvements."""
    loose = [k for k, c in enumerate(cands) if not c.exact]
    if cmap.pole is not None:
        radius = cfg.tol_cluster * cmap.scale
        loose = [k for k in loose if qnorm(cands[k].value - np.array(cmap.pole)) > radius]
    if not loose:
        return cands
    lam, ok, iters, _, step = _newton_batch(cmap, np.array([cands[k].value for k in loose]), cfg)
    out = list(cands)
    for j, k in enumerate(loose):
        if not ok[j]:
            continue
        old = cands[k]
        if sdet(shift(a, lam[j])) <= sdet(shift(a, old.value)):
            delta = 2.0 * step[j] + 1e-15 * cmap.scale
            out[k] = _Cand(lam[j], delta, old.iters + int(iters[j]), False)
    return out


# -- rank annotation -------------------------------------------------------------------------
def _jacobian_at(cmap: CharMap, lam: Quaternion) -> tuple[np.ndarray, float]:
    """Jacobian of ``cmap`` at a point of the original variable and its typical size."""
    if cmap.kind == "inverse-reduced3":
        jac = bilateral_matrix(diff3(None, lam, cmap))
        u = (lam - cmap.shift).inv()
        return jac, cmap.jacobian_scale(u) * abs(u) ** 2
    if cmap.pole is not None and abs(lam - cmap.pole) <= ZERO_TOL * cmap.scale:
        raise DifferentialUndefinedError("differential undefined at pole")
    return cmap.jacobian(lam), cmap.jacobian_scale(lam)


def _rank_at(maps: list, lam: Quaternion, delta: float, cfg: SolverConfig) -> Optional[int]:
    """Rank of the differential at ``lam`` using the first map defined there.

    Singular values below ``10 * delta * curvature`` are treated as zero, where
    ``delta`` bounds the error of ``lam`` and the curvature is a finite
    difference estimate of how fast the Jacobian changes.
    """
    for cmap in maps:
        if cmap.pole is not None and abs(lam - cmap.pole) <= cfg.tol_cluster * cmap.scale:
            continue
        try:
            jac, jscale = _jacobian_at(cmap, lam)
        except DifferentialUndefinedError:
            continue
        if not np.all(np.isfinite(jac)):
            continue
        curv = 0.0
        if delta > 0.0:
            h = 1e-4 * (1.0 + abs(lam))
            for k in range(4):
                e = np.zeros(4)
                e[k] = h
                try:
                    jk, _ = _jacobian_at(cmap, lam + Quaternion(*e))
                except DifferentialUndefinedError:
                    continue
                if np.all(np.isfinite(jk)):
                    curv = max(curv, float(np.linalg.norm(jk - jac, 2)) / h)
        return numeric_rank(jac, cfg.rank_tol, scale=jscale, atol=10.0 * delta * curv)
    return None


# -- clustering and verification -----------------------------------------------------------------
def _cluster(points: np.ndarray, radius: float) -> np.ndarray:
    if len(points) == 1:
        return np.zeros(1, dtype=int)
    labels = fcluster(linkage(points, method="single"), t=radius, criterion="distance")
    return labels


def _finalize(a: np.ndarray, cands: list, cfg: SolverConfig, maps: list) -> list:
    """Verify candidates by ``Sdet``, merge near duplicates and annotate ranks."""
    n = a.shape[0]
    scale = 1.0 + max_norm(a)
    bound = cfg.tol_residual * scale ** n
    floor = RESIDUAL_FLOOR * scale ** n
    recs = []
    for k, c in enumerate(cands):
        if not np.all(np.isfinite(c.value)):
            continue
        r = sdet(shift(a, c.value))
        if r <= bound:
            recs.append((c, r, k))
    if not recs:
        return []
    labels = _cluster(np.array([c.value for c, _, _ in recs]), cfg.tol_cluster * scale)
    order = []
    for lab in labels:
        if lab not in order:
            order.append(lab)
    roots = []
    for lab in order:
        members = [rec for rec, l in zip(recs, labels) if l == lab]
        # residuals under the rounding floor do not rank candidates; exact ones win
        rep, res, _ = min(
            members, key=lambda m: (max(m[1], floor), not m[0].exact, m[0].delta, m[2])
        )
        if rep.exact:
            delta = 0.0
        else:
            spread = max(float(qnorm(m[0].value - rep.value)) for m in members)
            delta = max(rep.delta, spread)
        value = Quaternion(*rep.value)
        roots.append(RootInfo(value, res, _rank_at(maps, value, delta, cfg), rep.iters))
    roots.sort(key=lambda r: tuple(np.round(np.array(r.value) / scale, 9)))
    return roots


# -- 2x2 ------------------------------------------------------------------------------------
def _is_zero(q: np.ndarray, scale: float) -> bool:
    return float(qnorm(q)) <= ZERO_TOL * scale


def _single_root2(a: np.ndarray, a0: Quaternion, a1: Quaternion) -> list:
    """Closed-form root for a 2x2 matrix whose only eigenvalue has rank 2.

    In the companion variable the equation is ``t^2 + a1 t + a0 = 0``. When it
    factors as ``t^2 - (P+Q) t + P Q`` with ``P = s + alpha``, ``Q = s - beta``
    similar but not commuting, ``Q`` is the unique root. With
    ``gamma = alpha - beta = -Im(a1)`` and ``s = -Re(a1)/2``,
    ``beta = gamma^-1 (s^2 + s gamma - a0 + |beta|^2)``, and ``|alpha| = |beta|``
    is the linear condition ``<beta, gamma> = -|gamma|^2 / 2`` which fixes
    ``|beta|^2``. Returns an empty list when no such factorisation exists.
    """
    s = -a1.w / 2.0
    gamma = -a1.imag
    g2 = gamma.norm2()
    if math.sqrt(g2) <= REAL_TOL * (1.0 + abs(a1)):
        return []
    u = gamma.inv() * (s * s + s * gamma - a0)
    # <gamma^-1, gamma> = -1, so <u + n gamma^-1, gamma> = -g2/2 gives n directly
    n = g2 / 2.0 + float(np.dot(u, gamma))
    beta = u + gamma.inv() * n
    slack = 1e-8 * (1.0 + abs(beta) + abs(gamma))
    if n < -slack or abs(beta.w) > slack or abs(beta.norm2() - n) > slack * (1.0 + abs(beta)):
        return []
    t = Quaternion(s) - beta.imag
    return [_exact(Quaternion(*a[0, 0]) + Quaternion(*a[0, 1]) * t)]


def _spectrum2_parts(a: np.ndarray, cfg: SolverConfig):
    """Candidates, classification path, spherical family and kind for a 2x2 matrix."""
    scale = 1.0 + max_norm(a)
    diag = [_exact(a[0, 0]), _exact(a[1, 1])]
    if _is_zero(a[0, 1], scale) or _is_zero(a[1, 0], scale):
        return diag, "2x2/triangular -> diagonal entries", None, "finite"
    try:
        a0, a1, delta = companion2(a)
    except DiagonalCaseError:  # pragma: no cover - excluded above
        return diag, "2x2/triangular -> diagonal entries", None, "finite"
    A, B, D = Quaternion(*a[0, 0]), Quaternion(*a[0, 1]), Quaternion(*a[1, 1])
    imag = abs(a0.imag) + abs(a1.imag)
    if imag <= REAL_TOL * (1.0 + abs(a0) + abs(a1)):
        c0, c1 = a0.w, a1.w
        disc = c1 * c1 - 4.0 * c0
        dtol = REAL_TOL * (1.0 + c1 * c1 + 4.0 * abs(c0))
        if disc < -dtol:
            fam = SphericalFamily((A + D) * 0.5, B, disc)
            cands = [_exact(p) for p in fam.points(6)]
            return cands, "2x2/real companion, delta < 0 -> spherical", fam, "spherical"
        if disc <= dtol:
            return [_exact((A + D) * 0.5)], "2x2/real companion, delta = 0 -> (a+d)/2", None, "finite"
        sq = math.sqrt(disc)
        cands = [_exact(A + B * ((-c1 + sign * sq) / 2.0)) for sign in (1.0, -1.0)]
        return cands, "2x2/real companion, delta > 0 -> a + b t", None, "finite"
    cands = _newton_candidates(char2(a), cfg)
    closed = _single_root2(a, a0, a1)
    path = "2x2/non-real companion -> newton"
    if closed:
        path += " + single-root formula"
    return cands + closed, path, None, "finite"


def spectrum2(a, cfg: Optional[SolverConfig] = None) -> SpectrumReport:
    """Left spectrum of a 2x2 matrix, classified as finite or spherical."""
    cfg = cfg or SolverConfig()
    a = as_qmatrix(a, 2)
    cands, path, fam, kind = _spectrum2_parts(a, cfg)
    cmap = char2(a)
    roots = _finalize(a, cands, cfg, [cmap])
    if not roots:
        for extra in range(1, 4):
            roots = _finalize(a, _newton_candidates(cmap, cfg, seed=cfg.seed + extra), cfg, [cmap])
            if roots:
                path += " (reseeded)"
                break
    if not roots:
        raise NoRootFoundError("no root found")
    return SpectrumReport(kind, tuple(roots), fam, path, 2, 2)


# -- 3x3 --------------------------------------------------------------------------------------
def _block(a: np.ndarray, rows: tuple) -> np.ndarray:
    return a[np.ix_(rows, rows)]


def _spectrum3_parts(a: np.ndarray, cmap: CharMap, cfg: SolverConfig):
    """Candidates, path, maps for rank annotation and spherical family (if any)."""
    kind = cmap.kind
    if kind in ("tri3", "block3", "block3r"):
        ap = a[np.ix_(cmap.permutation, cmap.permutation)]
        if kind == "tri3":
            cands = [_exact(ap[k, k]) for k in range(3)]
            return cands, "3x3/polynomial tri3 -> diagonal entries", [cmap], None
        single, rows = (0, (1, 2)) if kind == "block3" else (2, (0, 1))
        sub, subpath, fam, _ = _spectrum2_parts(_block(ap, rows), cfg)
        path = f"3x3/polynomial {kind} -> 1x1 entry + 2x2 block [{subpath}]"
        return [_exact(ap[single, single])] + sub, path, [cmap], fam
    if kind == "poly3":
        cands = _newton_candidates(cmap, cfg)
        return cands, "3x3/polynomial poly3 -> newton", [cmap], None

    # rational
    alternatives = [rational_map(a, p) for p in permutations(range(3)) if p != (0, 1, 2)]
    pi = cmap.pole
    if pole_is_eigenvalue(a):
        radius = POLE_EXCLUSION * cmap.scale
        cands = [_exact(pi)] + _newton_candidates(cmap, cfg, exclude=(pi, radius))
        path = "3x3/rational, pole is an eigenvalue (continuous) -> pole + newton"
        return cands, path, [cmap] + alternatives, None
    red = reduce_discontinuous(a)
    inner, innerpath, _, _ = _spectrum3_parts(red.matrix, char3(red.matrix), cfg)
    cands = []
    for c in inner:
        rho = Quaternion(*c.value)
        if abs(rho) <= ZERO_TOL * red.scale:
            continue
        lam = red.back(rho)
        delta = c.delta / rho.norm2() + 1e-15 * abs(lam)
        cands.append(_Cand(np.array(lam), delta, c.iters, False))
    cands = _polish(cmap, a, cands, cfg)
    path = f"3x3/rational, pole not an eigenvalue (discontinuous) -> inverse-reduction [{innerpath}]"
    return cands, path, [red, cmap] + alternatives, None


def spectrum3(a, cfg: Optional[SolverConfig] = None) -> SpectrumReport:
    """Left spectrum of a 3x3 matrix.

    Raises :class:`NoRootFoundError` if no verified root is found, which can
    only be a solver failure since every 3x3 matrix has a left eigenvalue.
    """
    cfg = cfg or SolverConfig()
    a = as_qmatrix(a, 3)
    cmap = char3(a)
    cands, path, maps, fam = _spectrum3_parts(a, cmap, cfg)
    roots = _finalize(a, cands, cfg, maps)
    if not roots:
        for extra in range(1, 4):
            more = _newton_candidates(cmap, replace(cfg, n_starts=4 * cfg.n_starts), seed=cfg.seed + extra)
            roots = _finalize(a, more, cfg, maps)
            if roots:
                path += " (reseeded)"
                break
    if not roots:
        raise NoRootFoundError("no root found")
    kind = "suspected-infinite" if (len(roots) > 3 or fam is not None) else "finite"
    return SpectrumReport(kind, tuple(roots), fam, path, 3, 3)


def spectrum(a, cfg: Optional[SolverConfig] = None) -> SpectrumReport:
    """Dispatch to :func:`spectrum2` or :func:`spectrum3` by order."""
    a = as_qmatrix(a)
    n = a.shape[0]
    if n == 2:
        return spectrum2(a, cfg)
    if n == 3:
        return spectrum3(a, cfg)
    raise ValueError(f"spectra are implemented for orders 2 and 3, got {n}")


__all__ = [
    "NewtonResult",
    "RootInfo",
    "SolverConfig",
    "SphericalFamily",
    "SpectrumReport",
    "eigen_bound",
    "newton",
    "sigma_oracle",
    "spectrum",
    "spectrum2",
    "spectrum3",
    "start_points",
]
