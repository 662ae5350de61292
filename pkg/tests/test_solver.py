import math

import numpy as np
import pytest

import oracles
from conftest import load_fixture, matrix_fixtures
from quatspec.charmap import char2, char3
from quatspec.errors import NoRootFoundError
from quatspec.quat import Quaternion, parse_quaternion
from quatspec.sdet import max_norm, sdet, shift
from quatspec.solver import (
    SolverConfig,
    SphericalFamily,
    eigen_bound,
    newton,
    sigma_oracle,
    spectrum,
    spectrum2,
    spectrum3,
    start_points,
)

Q = parse_quaternion


def assert_roots(got, expected, tol=1e-8):
    got = sorted((np.array(q) for q in got), key=tuple)
    want = sorted((np.array(Q(e)) for e in expected), key=tuple)
    assert len(got) == len(want), (got, want)
    for g, w in zip(got, want):
        assert np.abs(g - w).max() <= tol, (g, w)


def assert_verified(a, report, tol=1e-10):
    bound = tol * (1 + max_norm(a)) ** a.shape[0]
    for r in report.roots:
        assert oracles.sdet(oracles.shift(a, np.array(r.value))) <= 10 * bound
        assert abs(sigma_oracle(a, r.value)) <= (10 * bound) ** 2 + 1e-14


def companion_matrix(a, b, a0, a1):
    """The 2x2 matrix with top row (a, b) whose companion coefficients are a0, a1."""
    c = -(b * a0)
    d = a - b * a1
    return np.array([[list(a), list(b)], [list(c), list(d)]], dtype=float)


@pytest.mark.parametrize(
    "name,expected",
    [
        ("so3_triple", ["i", "j", "k"]),
        ("block_lower_three_roots", ["k", "0", "-i-j"]),
        ("rank_zero_root", ["0", "-i-j"]),
        ("identity3", ["1"]),
    ],
)
def test_exact_fixture_spectra(name, expected):
    a = load_fixture(name)
    report = spectrum3(a)
    assert_roots(report.values(), expected)
    assert report.kind == "finite"


def test_block_example_ranks():
    report = spectrum3(load_fixture("block_lower_three_roots"))
    assert [r.diff_rank for r in report.roots] == [4, 4, 4]
    ranks = {tuple(np.round(r.value, 8)): r.diff_rank for r in spectrum3(load_fixture("rank_zero_root")).roots}
    assert ranks[(0, -1, -1, 0)] == 0
    assert ranks[(0, 0, 0, 0)] == 4


@pytest.mark.parametrize("name", matrix_fixtures())
def test_fixture_roots_verified(name):
    a = load_fixture(name)
    report = spectrum(a)
    assert report.roots
    assert_verified(a, report)


def test_continuous_example_includes_pole():
    report = spectrum3(load_fixture("pole_is_eigenvalue"))
    assert any(np.abs(np.array(v) - np.array(Q("1+j"))).max() < 1e-12 for v in report.values())
    assert "pole is an eigenvalue" in report.classification_path


def test_discontinuous_example_goes_through_inverse():
    a = load_fixture("pole_not_eigenvalue")
    report = spectrum3(a)
    assert "inverse-reduction" in report.classification_path
    assert len(report.roots) == 3
    shifted = spectrum3(load_fixture("shifted_by_pole"))
    # B = A + i Id has the spectrum of A moved by +i
    moved = [np.array(v) + [0, 1, 0, 0] for v in report.values()]
    assert_roots(shifted.values(), [",".join(map(str, m)) for m in moved], tol=1e-8)


def test_rank_three_root():
    report = spectrum3(load_fixture("rank_three_root"))
    zero = [r for r in report.roots if abs(r.value) < 1e-12]
    assert len(zero) == 1 and zero[0].diff_rank == 3
    # more roots than the degree: flagged rather than hidden
    assert len(report.roots) == 4 and report.kind == "suspected-infinite"


def test_spherical_family():
    a = load_fixture("spherical2")
    report = spectrum2(a)
    assert report.kind == "spherical"
    fam = report.spherical
    assert fam.radius == pytest.approx(1.0)
    for p in fam.points(16):
        assert sdet(shift(a, p)) < 1e-12
        assert abs(p) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fam.point(Quaternion(1.0))


def test_two_by_two_classes(rng):
    for _ in range(20):
        a, b = (Quaternion(*v) for v in rng.standard_normal((2, 4)))
        t = float(rng.standard_normal())
        # real companion with zero discriminant: one root of rank 0
        m = companion_matrix(a, b, Quaternion(t * t), Quaternion(-2 * t))
        rep = spectrum2(m)
        assert len(rep.roots) == 1 and rep.roots[0].diff_rank == 0
        mid = (Quaternion(*m[0, 0]) + Quaternion(*m[1, 1])) * 0.5
        assert np.abs(np.array(rep.roots[0].value) - np.array(mid)).max() < 1e-10
        # real companion with positive discriminant: two rank-4 roots a + b t
        m = companion_matrix(a, b, Quaternion(t * t - 1), Quaternion(-2 * t))
        rep = spectrum2(m)
        assert_roots(rep.values(), [",".join(map(str, np.array(a + b * (t + s)))) for s in (1, -1)], 1e-9)
        assert [r.diff_rank for r in rep.roots] == [4, 4]


def test_single_rank_two_root(rng):
    for _ in range(20):
        a, b = (Quaternion(*v) for v in rng.standard_normal((2, 4)))
        t = float(rng.standard_normal())
        alpha = Quaternion(0, *rng.standard_normal(3))
        v = rng.standard_normal(3)
        beta = Quaternion(0, *v) * (abs(alpha) / np.linalg.norm(v))
        a0 = (t + alpha) * (t - beta)
        a1 = -2 * t + beta - alpha
        m = companion_matrix(a, b, a0, a1)
        rep = spectrum2(m)
        root = a + b * (t - beta)
        assert len(rep.roots) == 1
        assert np.abs(np.array(rep.roots[0].value) - np.array(root)).max() < 1e-8
        assert rep.roots[0].diff_rank == 2


def test_generic_two_by_two(rng):
    for _ in range(30):
        a = rng.standard_normal((2, 2, 4))
        rep = spectrum2(a)
        assert len(rep.roots) == 2
        assert_verified(a, rep)
        cmap = char2(a)
        for r in rep.roots:
            assert np.linalg.det(cmap.jacobian(r.value)) > 0


def test_triangular_two_by_two():
    a = np.zeros((2, 2, 4))
    a[0, 0] = Q("i")
    a[1, 1] = Q("2-k")
    a[1, 0] = Q("j")
    rep = spectrum2(a)
    assert_roots(rep.values(), ["i", "2-k"])


def test_newton_converges(rng):
    a = rng.standard_normal((3, 3, 4))
    cmap = char3(a)
    root = spectrum3(a).roots[0].value
    res = newton(cmap, np.array(root) + 1e-3, SolverConfig())
    assert res.converged
    assert np.abs(np.array(res.root) - np.array(root)).max() < 1e-9


def test_deterministic_for_fixed_seed(rng):
    a = rng.standard_normal((3, 3, 4))
    cfg = SolverConfig(seed=7)
    assert spectrum(a, cfg).to_dict() == spectrum(a, cfg).to_dict()


def test_start_points(rng):
    pts = start_points(2.0, 40, 1)
    assert pts.shape == (40, 4)
    assert np.linalg.norm(pts, axis=1).max() <= 2.5 + 1e-12
    np.testing.assert_array_equal(pts, start_points(2.0, 40, 1))
    assert start_points(1.0, 3, 0).shape == (3, 4)


def test_eigen_bound_contains_spectrum(rng):
    for _ in range(5):
        a = rng.standard_normal((3, 3, 4))
        bound = eigen_bound(a)
        assert all(abs(v) <= bound + 1e-9 for v in spectrum3(a).values())


def test_sigma_oracle_is_squared_sdet(rng):
    for n in (1, 2, 3):
        a = rng.standard_normal((n, n, 4))
        lam = rng.standard_normal(4)
        assert math.isclose(sigma_oracle(a, lam), sdet(shift(a, lam)) ** 2, rel_tol=1e-8)


@pytest.mark.parametrize(
    "kwargs",
    [{"tol_residual": 0}, {"tol_cluster": -1.0}, {"rank_tol": float("inf")}, {"max_iter": 0}, {"n_starts": 2.5}, {"seed": -1}],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SolverConfig(**kwargs)


def test_no_root_found_is_reported(rng):
    a = rng.standard_normal((3, 3, 4))
    a[0, 2] = 0
    with pytest.raises(NoRootFoundError):
        spectrum3(a, SolverConfig(max_iter=1, n_starts=1, tol_residual=1e-300))


def test_spectrum_rejects_other_orders():
    with pytest.raises(ValueError):
        spectrum(np.zeros((4, 4, 4)))


def test_report_dict_shape():
    d = spectrum2(load_fixture("spherical2")).to_dict()
    assert set(d) == {"kind", "n", "degree", "classification_path", "roots", "spherical"}
    assert d["spherical"]["radius"] == pytest.approx(1.0)
    assert SphericalFamily(Quaternion(), Quaternion(1), -4.0).radius == pytest.approx(1.0)


def test_block_with_spherical_part():
    a = np.zeros((3, 3, 4))
    a[0, 0] = Q("k")
    a[1, 0] = Q("1+2i")
    a[2, 0] = Q("i+j")
    a[1, 2] = Q("1")
    a[2, 1] = Q("-1")
    rep = spectrum3(a)
    assert rep.kind == "suspected-infinite"
    assert rep.spherical is not None and rep.spherical.radius == pytest.approx(1.0)
    assert_verified(a, rep)
