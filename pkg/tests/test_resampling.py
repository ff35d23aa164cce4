import numpy as np
import pytest

from src.resampling import ResamplePlan, minority_neighbours, random_oversample, resample, smote


def _rows(X):
    return {tuple(r) for r in np.asarray(X)}


def test_random_oversample_balances_with_minority_copies():
    X = np.arange(12, dtype=float).reshape(6, 2)
    y = np.array([0, 0, 0, 0, 1, 1])
    Xr, yr = random_oversample(X, y, seed=1)
    assert np.bincount(yr).tolist() == [4, 4]
    np.testing.assert_array_equal(Xr[:6], X)
    assert _rows(Xr[6:]) <= _rows(X[y == 1])
    assert (yr[6:] == 1).all()


def test_balanced_input_is_returned_unchanged():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    y = np.array([0, 1, 0, 1])
    for method in ("random_over", "smote"):
        Xr, yr = resample(ResamplePlan(method, seed=3), X, y)
        np.testing.assert_array_equal(Xr, X)
        np.testing.assert_array_equal(yr, y)


def test_single_minority_row_is_duplicated():
    X = np.array([[0.0], [1.0], [2.0], [3.0], [4.0], [9.0]])
    y = np.array([0, 0, 0, 0, 0, 1])
    for Xr, yr in (random_oversample(X, y, seed=0), smote(X, y, k=5, seed=0)):
        assert np.bincount(yr).tolist() == [5, 5]
        np.testing.assert_array_equal(Xr[6:], np.full((4, 1), 9.0))


def test_smote_adds_deficit_rows():
    X = np.random.default_rng(0).normal(size=(9, 3))
    y = np.array([0, 0, 0, 0, 0, 0, 1, 1, 1])
    Xr, yr = smote(X, y, k=5, seed=2)
    assert Xr.shape == (12, 3)
    assert np.bincount(yr).tolist() == [6, 6]


def test_smote_one_dimensional_segment():
    X = np.array([[0.0], [10.0], [3.0], [4.0], [5.0], [6.0], [7.0], [8.0]])
    y = np.array([1, 1, 0, 0, 0, 0, 0, 0])
    Xr, _ = smote(X, y, k=1, seed=4)
    synthetic = Xr[8:, 0]
    assert synthetic.size == 4
    assert ((synthetic >= 0.0) & (synthetic <= 10.0)).all()


def test_minority_neighbours_excludes_self_and_breaks_ties_by_index():
    X = np.array([[0.0], [1.0], [-1.0], [5.0]])
    nn = minority_neighbours(X, 2)
    assert nn[0].tolist() == [1, 2]
    assert 3 not in nn[0]
    assert all(i not in row for i, row in enumerate(nn))


def test_single_class_is_an_error():
    with pytest.raises(ValueError, match="exactly two classes"):
        random_oversample(np.zeros((3, 1)), np.array([1, 1, 1]), seed=0)
    with pytest.raises(ValueError, match="exactly two classes"):
        smote(np.zeros((3, 1)), np.array([0, 0, 0]), seed=0)


def test_plan_validation():
    with pytest.raises(ValueError, match="unknown resample method"):
        ResamplePlan("adasyn")
    with pytest.raises(ValueError, match="k_neighbors"):
        ResamplePlan("smote", k_neighbors=0)


def _on_some_segment(s: np.ndarray, X_min: np.ndarray, tol: float = 1e-9) -> bool:
    for a in X_min:
        for b in X_min:
            d = b - a
            dd = float(d @ d)
            t = 0.0 if dd == 0 else min(1.0, max(0.0, float((s - a) @ d) / dd))
            if np.linalg.norm(a + t * d - s) <= tol:
                return True
    return False


def test_resampling_invariants_on_random_instances():
    rng = np.random.default_rng(2024)
    for trial in range(500):
        n_min = int(rng.integers(1, 7))
        n_maj = int(rng.integers(n_min + 1, 13))
        d = int(rng.integers(1, 5))
        X = rng.normal(size=(n_min + n_maj, d))
        y = rng.permutation(np.r_[np.ones(n_min, dtype=int), np.zeros(n_maj, dtype=int)])
        seed = int(rng.integers(0, 2**31))

        Xr, yr = random_oversample(X, y, seed)
        assert np.bincount(yr).tolist() == [n_maj, n_maj]
        assert _rows(Xr[X.shape[0]:]) <= _rows(X[y == 1])

        Xs, ys = smote(X, y, k=int(rng.integers(1, 6)), seed=seed)
        assert np.bincount(ys).tolist() == [n_maj, n_maj]
        np.testing.assert_array_equal(Xs[: X.shape[0]], X)
        X_min = X[y == 1]
        for s in Xs[X.shape[0]:]:
            assert _on_some_segment(s, X_min), f"trial {trial}: {s} is off every minority segment"

        again = smote(X, y, k=3, seed=seed)
        np.testing.assert_array_equal(again[0], smote(X, y, k=3, seed=seed)[0])
        np.testing.assert_array_equal(random_oversample(X, y, seed)[0], Xr)
