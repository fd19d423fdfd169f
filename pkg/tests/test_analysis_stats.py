import numpy as np
import pytest
from hypothesis import given, strategies as st

from deorbitsim.analysis import Observation, anova_mixed_2x2, eta_sq_from_f
from deorbitsim.errors import DataError


class TestEtaSquared:
    @pytest.mark.parametrize(
        "f,expected",
        [(7.508, 0.429), (6.466, 0.393), (3.650, 0.267), (2.696, 0.212)],
    )
    def test_study_values(self, f, expected):
        assert eta_sq_from_f(f, 10) == pytest.approx(expected, abs=1e-3)

    def test_zero_f(self):
        assert eta_sq_from_f(0.0, 10) == 0.0

    @given(st.floats(min_value=0, max_value=1e6, allow_nan=False))
    def test_range(self, f):
        eta = eta_sq_from_f(f, 10)
        assert 0.0 <= eta < 1.0

    def test_strictly_increasing(self):
        fs = np.linspace(0, 50, 200)
        etas = [eta_sq_from_f(f, 10) for f in fs]
        assert all(b > a for a, b in zip(etas, etas[1:]))

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            eta_sq_from_f(-1.0, 10)
        with pytest.raises(ValueError):
            eta_sq_from_f(1.0, 0)


def make_obs(values: dict[str, tuple[str, float, float]]) -> list[Observation]:
    """values: subject -> (cohort, bottom value, front value)."""
    out = []
    for subject, (cohort, b, f) in values.items():
        out.append(Observation(subject, cohort, "BOTTOM", b))
        out.append(Observation(subject, cohort, "FRONT", f))
    return out


WORKSHEET = make_obs(
    {
        "A": ("pilot", 10.0, 14.0),
        "B": ("pilot", 12.0, 18.0),
        "C": ("civilian", 20.0, 22.0),
        "D": ("civilian", 24.0, 30.0),
    }
)


class TestAnova:
    def test_hand_worksheet(self):
        # n=4 dataset computed with the textbook sums-of-squares worksheet:
        # SS_view=40.5, SS_cohort=220.5, SS_inter=0.5,
        # SS_err_within=5.0 (df 2), SS_subj_within=45.0 (df 2)
        res = anova_mixed_2x2(WORKSHEET)
        assert res["view"].F == pytest.approx(40.5 / 2.5, rel=1e-12)
        assert res["cohort"].F == pytest.approx(220.5 / 22.5, rel=1e-12)
        assert res["interaction"].F == pytest.approx(0.5 / 2.5, rel=1e-12)
        assert res["view"].partial_eta_sq == pytest.approx(40.5 / 45.5, rel=1e-12)
        assert res["cohort"].partial_eta_sq == pytest.approx(220.5 / 265.5, rel=1e-12)
        assert res["interaction"].partial_eta_sq == pytest.approx(0.5 / 5.5, rel=1e-12)
        for key in ("view", "cohort", "interaction"):
            assert res[key].df_effect == 1
            assert res[key].df_error == 2

    def test_study_design_df(self, rng):
        # 12 subjects, 6 per cohort: every effect is F(1, 10)
        obs = []
        for i in range(12):
            cohort = "pilot" if i < 6 else "civilian"
            obs.append(Observation(f"s{i}", cohort, "BOTTOM", float(rng.normal())))
            obs.append(Observation(f"s{i}", cohort, "FRONT", float(rng.normal())))
        res = anova_mixed_2x2(obs)
        for key in ("view", "cohort", "interaction"):
            assert res[key].df_error == 10

    def test_identical_views_zero_view_effect(self):
        obs = make_obs(
            {
                "A": ("pilot", 10.0, 10.0),
                "B": ("pilot", 12.0, 12.0),
                "C": ("civilian", 20.0, 20.0),
                "D": ("civilian", 24.0, 24.0),
            }
        )
        res = anova_mixed_2x2(obs)
        assert res["view"].F == 0.0
        assert res["view"].partial_eta_sq == 0.0

    def test_cohort_swap_leaves_f_unchanged(self):
        res1 = anova_mixed_2x2(WORKSHEET)
        swapped = [
            Observation(o.subject, "civilian" if o.cohort == "pilot" else "pilot", o.view, o.value)
            for o in WORKSHEET
        ]
        res2 = anova_mixed_2x2(swapped)
        assert res1["cohort"].F == pytest.approx(res2["cohort"].F, rel=1e-12)

    def test_constant_shift_invariance(self):
        res1 = anova_mixed_2x2(WORKSHEET)
        shifted = [Observation(o.subject, o.cohort, o.view, o.value + 123.456) for o in WORKSHEET]
        res2 = anova_mixed_2x2(shifted)
        for key in ("view", "cohort", "interaction"):
            assert res1[key].F == pytest.approx(res2[key].F, rel=1e-9)

    def test_matches_definitional_oracle_on_random_data(self, rng):
        for _ in range(20):
            n_per = int(rng.integers(2, 7))
            obs = []
            for i in range(2 * n_per):
                cohort = "g1" if i < n_per else "g2"
                obs.append(Observation(f"s{i}", cohort, "V1", float(rng.normal(10, 3))))
                obs.append(Observation(f"s{i}", cohort, "V2", float(rng.normal(12, 3))))
            res = anova_mixed_2x2(obs)
            want = _oracle_mixed_anova(obs)
            for key in ("view", "cohort", "interaction"):
                assert res[key].F == pytest.approx(want[key], rel=1e-9), key

    def test_missing_cell_rejected(self):
        obs = WORKSHEET[:-1]
        with pytest.raises(DataError):
            anova_mixed_2x2(obs)

    def test_unbalanced_cohorts_rejected(self):
        obs = WORKSHEET + make_obs({"E": ("pilot", 11.0, 13.0)})
        with pytest.raises(DataError):
            anova_mixed_2x2(obs)


def _oracle_mixed_anova(obs) -> dict[str, float]:
    """Definitional mixed-ANOVA F ratios computed with numpy pivot tables."""
    subjects = sorted({o.subject for o in obs})
    views = sorted({o.view for o in obs})
    cohorts = sorted({o.cohort for o in obs})
    cohort_of = {o.subject: o.cohort for o in obs}
    y = np.array([
        [next(o.value for o in obs if o.subject == s and o.view == v) for v in views]
        for s in subjects
    ])
    g = np.array([cohorts.index(cohort_of[s]) for s in subjects])
    n, b = y.shape
    grand = y.mean()
    subj_mean = y.mean(axis=1)
    view_mean = y.mean(axis=0)
    ss_between = b * ((subj_mean - grand) ** 2).sum()
    ss_cohort = sum(
        b * (g == k).sum() * (subj_mean[g == k].mean() - grand) ** 2 for k in range(2)
    )
    ss_subj_within = ss_between - ss_cohort
    ss_view = n * ((view_mean - grand) ** 2).sum()
    ss_inter = 0.0
    for k in range(2):
        for j in range(b):
            cell = y[g == k, j].mean()
            ss_inter += (g == k).sum() * (cell - subj_mean[g == k].mean() - view_mean[j] + grand) ** 2
    ss_within = ((y - subj_mean[:, None]) ** 2).sum()
    ss_err = ss_within - ss_view - ss_inter
    df = n - 2
    return {
        "view": (ss_view / 1) / (ss_err / df),
        "cohort": (ss_cohort / 1) / (ss_subj_within / df),
        "interaction": (ss_inter / 1) / (ss_err / df),
    }
