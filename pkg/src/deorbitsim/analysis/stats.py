"""Mixed-design 2x2 ANOVA and partial eta-squared effect sizes.

The design matches the study: two cohorts (between subjects) crossed with
two view conditions (within subjects), one observation per subject per
view. With n subjects, every effect has 1 numerator degree of freedom and
n - 2 error degrees of freedom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import DataError


@dataclass(frozen=True)
class StatResult:
    F: float
    df_effect: int
    df_error: int
    partial_eta_sq: float


@dataclass(frozen=True)
class Observation:
    subject: str
    cohort: str
    view: str
    value: float


def eta_sq_from_f(F: float, df_error: int, df_effect: int = 1) -> float:
    """Partial eta squared from an F ratio: F*df1 / (F*df1 + df2)."""
    if F < 0:
        raise ValueError("F must be non-negative")
    if df_error <= 0 or df_effect <= 0:
        raise ValueError("degrees of freedom must be positive")
    return (F * df_effect) / (F * df_effect + df_error)


def _f_and_eta(ss_effect: float, ss_error: float, df_error: int) -> StatResult:
    if ss_error == 0.0:
        if ss_effect == 0.0:
            return StatResult(F=0.0, df_effect=1, df_error=df_error, partial_eta_sq=0.0)
        raise DataError("degenerate design: zero error variance with a non-zero effect")
    f = (ss_effect / 1.0) / (ss_error / df_error)
    eta = ss_effect / (ss_effect + ss_error)
    return StatResult(F=f, df_effect=1, df_error=df_error, partial_eta_sq=eta)


def anova_mixed_2x2(observations: Iterable[Observation]) -> dict[str, StatResult]:
    """Mixed ANOVA for 2 cohorts x 2 within-subject views.

    Returns StatResults keyed "view", "cohort", "interaction". Requires a
    balanced design: two equally sized cohorts, every subject measured under
    both views exactly once.
    """
    obs = list(observations)
    views = sorted({o.view for o in obs})
    cohorts = sorted({o.cohort for o in obs})
    if len(views) != 2 or len(cohorts) != 2:
        raise DataError(
            f"need exactly 2 views and 2 cohorts, got {len(views)} views / {len(cohorts)} cohorts"
        )

    by_subject: dict[str, dict[str, float]] = {}
    cohort_of: dict[str, str] = {}
    for o in obs:
        if o.subject in cohort_of and cohort_of[o.subject] != o.cohort:
            raise DataError(f"subject {o.subject} appears in two cohorts")
        cohort_of[o.subject] = o.cohort
        cell = by_subject.setdefault(o.subject, {})
        if o.view in cell:
            raise DataError(f"duplicate measurement for subject {o.subject}, view {o.view}")
        cell[o.view] = o.value

    subjects = sorted(by_subject)
    for s in subjects:
        if set(by_subject[s]) != set(views):
            raise DataError(f"subject {s} is missing a view condition")
    group_sizes = {g: sum(1 for s in subjects if cohort_of[s] == g) for g in cohorts}
    if len(set(group_sizes.values())) != 1:
        raise DataError(f"unbalanced cohorts: {group_sizes}")

    n = len(subjects)
    if n < 4:
        raise DataError("need at least 2 subjects per cohort")
    b = 2  # views per subject

    grand = sum(by_subject[s][v] for s in subjects for v in views) / (n * b)
    subj_mean = {s: sum(by_subject[s].values()) / b for s in subjects}
    view_mean = {v: sum(by_subject[s][v] for s in subjects) / n for v in views}
    cohort_mean = {
        g: sum(subj_mean[s] for s in subjects if cohort_of[s] == g) / group_sizes[g]
        for g in cohorts
    }
    cell_mean = {
        (g, v): sum(by_subject[s][v] for s in subjects if cohort_of[s] == g) / group_sizes[g]
        for g in cohorts
        for v in views
    }

    ss_between_subj = b * sum((subj_mean[s] - grand) ** 2 for s in subjects)
    ss_cohort = b * sum(group_sizes[g] * (cohort_mean[g] - grand) ** 2 for g in cohorts)
    ss_subj_within = ss_between_subj - ss_cohort

    ss_view = n * sum((view_mean[v] - grand) ** 2 for v in views)
    ss_inter = sum(
        group_sizes[g] * (cell_mean[(g, v)] - cohort_mean[g] - view_mean[v] + grand) ** 2
        for g in cohorts
        for v in views
    )
    ss_within_subj = sum(
        (by_subject[s][v] - subj_mean[s]) ** 2 for s in subjects for v in views
    )
    ss_err_within = ss_within_subj - ss_view - ss_inter

    # Sums of squares are non-negative up to rounding; clip the residual.
    ss_subj_within = max(ss_subj_within, 0.0)
    ss_err_within = max(ss_err_within, 0.0)

    df_error = n - 2
    return {
        "view": _f_and_eta(ss_view, ss_err_within, df_error),
        "cohort": _f_and_eta(ss_cohort, ss_subj_within, df_error),
        "interaction": _f_and_eta(ss_inter, ss_err_within, df_error),
    }
