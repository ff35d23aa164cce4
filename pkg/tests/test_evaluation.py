import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.data import ColumnSpec, make_table
from src.errors import FoldFailure, GridSearchError
from src.evaluation import (
    FoldPlan,
    PipelineSpec,
    aggregate_group_stats,
    confusion,
    cross_validate,
    f1_score,
    grid_search,
    kfold_plan,
    lattice,
    precision,
    recall,
    score_predictions,
    weighted_f1,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _table(y, seed=0):
    """One continuous feature loosely tied to y, plus the outcome."""
    y = np.asarray(y, dtype=int)
    r = np.random.default_rng(seed)
    frame = pd.DataFrame({"x1": np.round(r.normal(size=y.size) + y, 4), "success": y})
    schema = [
        ColumnSpec(name="x1", kind="continuous", category="analytical"),
        ColumnSpec(name="success", kind="binary", category="outcome"),
    ]
    return make_table(schema, frame)


# --- metrics ---


def test_f1_hand_computed():
    cm = confusion([1, 1, 1, 1, 1, 0], [1, 1, 1, 0, 0, 1])
    assert (cm.tp, cm.fn, cm.fp, cm.tn) == (3, 2, 1, 0)
    assert precision(cm) == pytest.approx(0.75)
    assert recall(cm) == pytest.approx(0.6)
    assert f1_score(cm) == pytest.approx(2 / 3)


def test_f1_edges():
    assert f1_score(confusion([1, 0, 1], [1, 0, 1])) == 1.0
    # no positive predictions with positives present
    assert f1_score(confusion([1, 1, 0], [0, 0, 0])) == 0.0
    assert f1_score(confusion([0, 0], [0, 0])) == 0.0
    with pytest.raises(ValueError, match="differ in length"):
        confusion([1, 0], [1])


def test_weighted_f1_weights_by_support():
    y_true = [1, 1, 1, 0, 0]
    y_pred = [1, 1, 0, 0, 1]
    # f1 on class 1 is 2/3 over support 3, on class 0 it is 1/2 over support 2
    assert weighted_f1(y_true, y_pred) == pytest.approx((3 * 2 / 3 + 2 * 0.5) / 5)
    assert score_predictions("f1_weighted", y_true, y_pred) == pytest.approx(0.6)
    assert score_predictions("f1", y_true, y_pred) == pytest.approx(2 / 3)
    with pytest.raises(ValueError, match="unknown metric"):
        score_predictions("auc", y_true, y_pred)


# --- folds ---


def test_fold_sizes_for_73_rows():
    plan = kfold_plan(73, 8, stratified=False, seed=0)
    assert sorted(len(f) for f in plan.test_folds) == [9] * 7 + [10]


def test_stratified_folds_spread_positives():
    y = np.r_[np.zeros(8, dtype=int), np.ones(8, dtype=int)]
    plan = kfold_plan(16, 8, y=y, seed=3)
    assert [int(y[list(f)].sum()) for f in plan.test_folds] == [1] * 8


def test_fold_plan_errors():
    with pytest.raises(ValueError, match="at least 2"):
        kfold_plan(10, 1, stratified=False)
    with pytest.raises(ValueError, match="cannot make"):
        kfold_plan(5, 8, stratified=False)
    with pytest.raises(ValueError, match="need labels"):
        kfold_plan(10, 2)


def test_fold_plans_partition_and_balance():
    rng = np.random.default_rng(17)
    for _ in range(200):
        n = int(rng.integers(2, 120))
        k = int(rng.integers(2, min(n, 12) + 1))
        y = rng.integers(0, 2, size=n)
        stratified = bool(rng.integers(0, 2))
        plan = kfold_plan(n, k, y=y, stratified=stratified, seed=int(rng.integers(0, 1000)))
        rows = [i for f in plan.test_folds for i in f]
        assert sorted(rows) == list(range(n))
        sizes = [len(f) for f in plan.test_folds]
        assert max(sizes) - min(sizes) <= 1
        if stratified:
            for c in (0, 1):
                per_fold = [int((y[list(f)] == c).sum()) for f in plan.test_folds]
                assert max(per_fold) - min(per_fold) <= 1
        for f in range(k):
            assert set(plan.train_indices(f)).isdisjoint(plan.test_indices(f))
            assert len(plan.train_indices(f)) + len(plan.test_indices(f)) == n


def test_fold_plan_is_seeded():
    y = np.r_[np.zeros(20, dtype=int), np.ones(20, dtype=int)]
    assert kfold_plan(40, 4, y=y, seed=9) == kfold_plan(40, 4, y=y, seed=9)
    assert kfold_plan(40, 4, y=y, seed=9) != kfold_plan(40, 4, y=y, seed=10)


# --- pipeline and cross-validation ---


def test_pipeline_spec_validation_and_stages():
    spec = PipelineSpec("knn", {"k": 3}, selector="both", resampler="smote")
    assert spec.stages() == ["encoder", "scaler", "selector:both", "resampler:smote", "classifier:knn"]
    assert PipelineSpec("logistic", selector="none").stages() == ["encoder", "scaler", "classifier:logistic"]
    assert spec.with_params(k=5).params == {"k": 5}
    with pytest.raises(ValueError, match="unknown classifier family"):
        PipelineSpec("svm")
    with pytest.raises(ValueError, match="unknown selector"):
        PipelineSpec("knn", selector="lasso")
    with pytest.raises(ValueError, match="unknown resampler"):
        PipelineSpec("knn", resampler="adasyn")
    with pytest.raises(ValueError, match="selector_k"):
        PipelineSpec("knn", selector_k=0)


def test_majority_classifier_matches_closed_form():
    y = np.r_[np.ones(14, dtype=int), np.zeros(10, dtype=int)]
    t = _table(y)
    plan = kfold_plan(24, 4, y=y, seed=2)
    pipeline = PipelineSpec("decision_tree", {"max_depth": 0}, selector="none")
    cv = cross_validate(pipeline, t, plan)
    expected = []
    for f in range(plan.k):
        test_y = y[plan.test_indices(f)]
        tp, fp = int(test_y.sum()), int((test_y == 0).sum())
        expected.append(2 * tp / (2 * tp + fp))
    assert list(cv.fold_scores) == pytest.approx(expected)
    assert cv.mean == pytest.approx(np.mean(expected))
    assert cv.sd == pytest.approx(np.std(expected))


def test_cross_validation_is_deterministic(small_table):
    plan = kfold_plan(small_table.row_count, 4, y=small_table.labels(), seed=0)
    pipeline = PipelineSpec("decision_tree", selector="both", extra_trees_n=10, resampler="smote")
    a = cross_validate(pipeline, small_table, plan, seed=11)
    b = cross_validate(pipeline, small_table, plan, seed=11)
    assert a.fold_scores == b.fold_scores
    assert [m.selected_features for m in a.manifests] == [m.selected_features for m in b.manifests]


def test_shared_fold_preparation_matches_fresh_runs(small_table):
    plan = kfold_plan(small_table.row_count, 4, y=small_table.labels(), seed=0)
    base = PipelineSpec("decision_tree", selector="kbest", resampler="smote")
    prepared = {}
    for depth in (1, 3, None):
        shared = cross_validate(base.with_params(max_depth=depth), small_table, plan, 11, prepared)
        fresh = cross_validate(base.with_params(max_depth=depth), small_table, plan, 11)
        assert shared.fold_scores == fresh.fold_scores
        assert [m.model_params for m in shared.manifests] == [m.model_params for m in fresh.manifests]
    assert sorted(prepared) == [0, 1, 2, 3]


def test_scaler_is_fitted_on_training_rows_only(numeric_table):
    frame = numeric_table.frame.copy()
    frame.loc[0, "x1"] = 1e6
    t = numeric_table.with_frame(frame)
    plan = kfold_plan(24, 4, y=t.labels(), seed=5)
    cv = cross_validate(PipelineSpec("gaussian_nb", selector="none"), t, plan)
    x1 = frame["x1"].to_numpy(dtype=float)
    for f, manifest in enumerate(cv.manifests):
        train = plan.train_indices(f)
        assert manifest.scaler["x1"]["center"] == pytest.approx(float(np.mean(x1[train])))
        assert (manifest.scaler["x1"]["center"] > 1e4) == (0 in train)


def test_resampling_leaves_test_folds_alone(numeric_table):
    plan = kfold_plan(24, 4, y=numeric_table.labels(), seed=5)
    cv = cross_validate(PipelineSpec("knn", {"k": 3}, selector="none", resampler="smote", smote_k=3), numeric_table, plan)
    for f, manifest in enumerate(cv.manifests):
        assert manifest.n_test == len(plan.test_folds[f])
        assert manifest.n_train == 24 - manifest.n_test
        assert manifest.n_train_resampled == 2 * max(manifest.train_class_counts.values())


def test_global_resample_scope_draws_from_every_row(numeric_table):
    plan = kfold_plan(24, 4, y=numeric_table.labels(), seed=5)
    pipeline = PipelineSpec("knn", {"k": 3}, selector="none", resampler="random_over", resample_scope="global")
    cv = cross_validate(pipeline, numeric_table, plan)
    # 14 negatives and 10 positives overall: four synthetic positives per fold
    for manifest in cv.manifests:
        assert manifest.n_train_resampled == manifest.n_train + 4


def test_single_class_training_split_fails_the_fold():
    y = np.r_[[1, 1], np.zeros(22, dtype=int)]
    t = _table(y)
    plan = FoldPlan(k=2, n=24, test_folds=(tuple(range(12)), tuple(range(12, 24))), seed=0, stratified=False)
    with pytest.raises(FoldFailure) as info:
        cross_validate(PipelineSpec("logistic", selector="none"), t, plan)
    assert info.value.fold == 0
    assert "single class" in info.value.reason


def test_fitting_errors_become_fold_failures(numeric_table):
    plan = kfold_plan(24, 4, y=numeric_table.labels(), seed=5)
    with pytest.raises(FoldFailure, match="exceeds"):
        cross_validate(PipelineSpec("knn", {"k": 1000}, selector="none"), numeric_table, plan)


def test_plan_must_cover_the_table(numeric_table):
    plan = kfold_plan(10, 2, stratified=False)
    with pytest.raises(ValueError, match="fold plan covers 10 rows"):
        cross_validate(PipelineSpec("knn", selector="none"), numeric_table, plan)


def test_cv_result_serialises(numeric_table):
    plan = kfold_plan(24, 4, y=numeric_table.labels(), seed=5)
    out = cross_validate(PipelineSpec("complement_nb", selector="kbest", selector_k=1), numeric_table, plan).to_dict()
    assert out["plan"]["fold_sizes"] == [6, 6, 6, 6]
    assert len(out["folds"]) == 4
    assert out["folds"][0]["selected_features"] in (["x1"], ["x2"])
    assert out["pipeline"]["stages"][-1] == "classifier:complement_nb"


# --- grid search ---


def test_lattice_order_and_dedup():
    assert lattice({"k": [3, 1, 3]}) == [{"k": 1}, {"k": 3}]
    assert lattice({"max_depth": [None, 2], "criterion": ["gini", "entropy"]}) == [
        {"criterion": "entropy", "max_depth": 2},
        {"criterion": "entropy", "max_depth": None},
        {"criterion": "gini", "max_depth": 2},
        {"criterion": "gini", "max_depth": None},
    ]
    with pytest.raises(ValueError, match="empty"):
        lattice({})
    with pytest.raises(ValueError, match="no values"):
        lattice({"k": []})


@pytest.fixture
def knn_setup(numeric_table):
    plan = kfold_plan(24, 4, y=numeric_table.labels(), seed=5)
    return PipelineSpec("knn", selector="none"), numeric_table, plan


def test_singleton_grid(knn_setup):
    base, t, plan = knn_setup
    result = grid_search(base, {"k": [3]}, t, plan, seed=4)
    assert result.best_params == {"k": 3}
    assert result.best_cv.fold_scores == cross_validate(base.with_params(k=3), t, plan, seed=4).fold_scores


def test_grid_search_picks_the_exhaustive_maximum(knn_setup):
    base, t, plan = knn_setup
    result = grid_search(base, {"k": [1, 3, 5]}, t, plan, seed=4)
    means = {k: cross_validate(base.with_params(k=k), t, plan, seed=4).mean for k in (1, 3, 5)}
    best = max(means.values())
    assert result.best_score == pytest.approx(best)
    assert result.best_params["k"] == min(k for k, m in means.items() if m == best)
    assert [p.mean_score for p in result.points] == [means[1], means[3], means[5]]


def test_duplicate_grid_values_change_nothing(knn_setup):
    base, t, plan = knn_setup
    a = grid_search(base, {"k": [5, 1, 5, 1]}, t, plan)
    b = grid_search(base, {"k": [1, 5]}, t, plan)
    assert a.best_params == b.best_params
    assert a.best_score == b.best_score
    assert len(a.points) == 2


def test_best_params_replay_exactly(knn_setup):
    base, t, plan = knn_setup
    result = grid_search(base, {"k": [1, 3, 5, 7]}, t, plan, seed=8)
    replay = cross_validate(base.with_params(**result.best_params), t, plan, seed=8)
    assert replay.fold_scores == result.best_cv.fold_scores


def test_failing_points_are_recorded(knn_setup):
    base, t, plan = knn_setup
    result = grid_search(base, {"k": [1, 1000]}, t, plan)
    assert result.best_params == {"k": 1}
    failed = [p for p in result.points if p.error is not None]
    assert [p.params for p in failed] == [{"k": 1000}]
    assert failed[0].mean_score is None


def test_all_points_failing_is_an_error(knn_setup):
    base, t, plan = knn_setup
    with pytest.raises(GridSearchError, match="all 2 grid points failed"):
        grid_search(base, {"k": [500, 1000]}, t, plan)


def test_separate_search_plan(knn_setup):
    base, t, plan = knn_setup
    inner = kfold_plan(24, 4, y=t.labels(), seed=77)
    result = grid_search(base, {"k": [1, 3, 5]}, t, plan, seed=2, search_plan=inner)
    chosen = base.with_params(**result.best_params)
    assert result.best_score == pytest.approx(cross_validate(chosen, t, inner, seed=2).mean)
    assert result.best_cv.fold_scores == cross_validate(chosen, t, plan, seed=2).fold_scores
    assert result.to_dict()["reported_score"] == result.best_cv.mean


# --- aggregation ---


def _published_f1() -> pd.DataFrame:
    return pd.read_csv(FIXTURES / "published_f1.csv", index_col="Classifier")


def test_group_one_of_published_f1():
    stats = {s.group: s for s in aggregate_group_stats(_published_f1())}
    assert stats["I"].n == 9
    assert round(stats["I"].mean, 3) == 0.519
    assert round(stats["I"].sd, 3) == 0.071
    assert round(stats["VIII"].mean, 3) == 0.532
    assert round(stats["VIII"].sd, 3) == 0.060


def test_population_sd_matches_two_pass_formula():
    rng = np.random.default_rng(6)
    for _ in range(20):
        values = rng.uniform(0, 1, size=int(rng.integers(1, 12)))
        (stat,) = aggregate_group_stats(pd.DataFrame({"G": values}))
        mean = sum(values) / len(values)
        sd = math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))
        assert stat.mean == pytest.approx(mean, abs=1e-12)
        assert stat.sd == pytest.approx(sd, abs=1e-12)


def test_constant_column_has_zero_sd():
    (stat,) = aggregate_group_stats(pd.DataFrame({"G": [0.5, 0.5, 0.5]}))
    assert stat.sd == 0.0


def test_missing_cells():
    frame = pd.DataFrame({"G": [0.5, np.nan, 0.7]}, index=["a", "b", "c"])
    with pytest.raises(ValueError, match=r"group G has missing cells for \['b'\]"):
        aggregate_group_stats(frame)
    (stat,) = aggregate_group_stats(frame, allow_missing=True)
    assert stat.n == 2
    assert stat.mean == pytest.approx(0.6)
    with pytest.raises(ValueError, match="no values"):
        aggregate_group_stats(pd.DataFrame({"G": [np.nan]}), allow_missing=True)
