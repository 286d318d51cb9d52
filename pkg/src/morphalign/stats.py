"""Statistical tests for group comparisons over language-level records.

Welch two-sample t-test (fractional Satterthwaite df), Pearson correlation
with its F-form significance test, OLS with categorical dummy coding, and the
nested-model F-test comparing a full against a reduced regression. Tail
probabilities come from scipy's incomplete-beta based t/F distributions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np
from scipy import stats as _sps

from .errors import StatError


@dataclass(frozen=True)
class TTestResult:
    mean_a: float
    mean_b: float
    t: float
    df: float
    p: float


@dataclass(frozen=True)
class RegressionResult:
    coefficients: dict[str, float]
    r2: float
    adj_r2: float
    rss: float
    df_resid: float
    n_obs: int
    columns: tuple[str, ...]  # expanded design columns, intercept excluded
    F_vs_reduced: float | None = None
    df_num: float | None = None
    df_den: float | None = None
    p: float | None = None


class FTestResult(NamedTuple):
    F: float
    df_num: float
    df_den: float
    p: float


class PearsonResult(NamedTuple):
    r: float
    F: float
    p: float


def t_sf(x: float, df: float) -> float:
    """Upper tail of Student's t."""
    return float(_sps.t.sf(x, df))


def f_sf(x: float, df_num: float, df_den: float) -> float:
    """Upper tail of the F distribution."""
    return float(_sps.f.sf(x, df_num, df_den))


def welch_t(a: Sequence[float], b: Sequence[float], pooled: bool = False) -> TTestResult:
    """Two-sample t-test; Welch (unequal variances) unless ``pooled``.

    Both groups with zero variance: equal means give t=0, p=1 by convention,
    unequal means give an infinite statistic with p=0.
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.size < 2 or y.size < 2:
        raise StatError(f"each group needs >= 2 values, got {x.size} and {y.size}")
    ma, mb = float(x.mean()), float(y.mean())
    va, vb = float(x.var(ddof=1)), float(y.var(ddof=1))
    na, nb = x.size, y.size
    diff = ma - mb
    if va == 0.0 and vb == 0.0:
        if diff == 0.0:
            return TTestResult(ma, mb, 0.0, float(na + nb - 2), 1.0)
        return TTestResult(ma, mb, math.copysign(math.inf, diff), float(na + nb - 2), 0.0)
    if pooled:
        sp2 = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2)
        se = math.sqrt(sp2 * (1.0 / na + 1.0 / nb))
        df = float(na + nb - 2)
    else:
        se2 = va / na + vb / nb
        se = math.sqrt(se2)
        df = se2 * se2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    t = diff / se
    p = 2.0 * t_sf(abs(t), df)
    return TTestResult(ma, mb, t, df, min(p, 1.0))


def _is_numeric_column(values: Sequence) -> bool:
    for v in values:
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            continue
        try:
            float(v)
        except (TypeError, ValueError):
            return False
    return True


def build_design(
    X: Mapping[str, Sequence], n_obs: int
) -> tuple[np.ndarray, list[str]]:
    """Expand predictors into a design matrix with a leading intercept.

    String-valued columns become dummy indicators per level (sorted), with the
    first level dropped as the reference.
    """
    columns: list[np.ndarray] = [np.ones(n_obs)]
    names: list[str] = ["(intercept)"]
    for name in X:
        values = list(X[name])
        if len(values) != n_obs:
            raise StatError(f"predictor {name!r} has {len(values)} rows, expected {n_obs}")
        if _is_numeric_column(values):
            columns.append(np.asarray([float(v) for v in values]))
            names.append(name)
        else:
            levels = sorted({str(v) for v in values})
            if len(levels) < 2:
                raise StatError(f"categorical predictor {name!r} has a single level")
            for level in levels[1:]:
                columns.append(np.asarray([1.0 if str(v) == level else 0.0 for v in values]))
                names.append(f"{name}[{level}]")
    return np.column_stack(columns), names


def _collinear_columns(M: np.ndarray, names: list[str]) -> list[str]:
    kept: list[int] = []
    flagged: list[str] = []
    rank = 0
    for j in range(M.shape[1]):
        cand = M[:, kept + [j]]
        r = np.linalg.matrix_rank(cand)
        if r > rank:
            kept.append(j)
            rank = r
        else:
            flagged.append(names[j])
    return flagged


def ols_fit(y: Sequence[float], X: Mapping[str, Sequence]) -> RegressionResult:
    """Least-squares fit of y on the expanded design (intercept included)."""
    yv = np.asarray(y, dtype=float)
    n = yv.size
    M, names = build_design(X, n)
    ncols = M.shape[1]
    if n < ncols + 1:
        raise StatError(f"need at least {ncols + 1} rows for {ncols} design columns, got {n}")
    if np.linalg.matrix_rank(M) < ncols:
        bad = _collinear_columns(M, names)
        raise StatError(f"design is rank deficient; collinear columns: {bad}")
    beta, _, _, _ = np.linalg.lstsq(M, yv, rcond=None)
    fitted = M @ beta
    resid = yv - fitted
    rss = float(resid @ resid)
    tss = float(((yv - yv.mean()) ** 2).sum())
    if tss == 0.0:
        r2 = 1.0 if rss <= 1e-12 else 0.0
    else:
        r2 = 1.0 - rss / tss
    p = ncols - 1  # predictors excluding intercept
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1) if n - p - 1 > 0 else float("nan")
    return RegressionResult(
        coefficients={name: float(b) for name, b in zip(names, beta)},
        r2=r2,
        adj_r2=adj_r2,
        rss=rss,
        df_resid=float(n - ncols),
        n_obs=n,
        columns=tuple(names[1:]),
    )


def nested_f(full: RegressionResult, reduced: RegressionResult) -> FTestResult:
    """F-test that the full model explains more variance than a reduced model
    fit on a subset of its predictors over the same rows."""
    if full.n_obs != reduced.n_obs:
        raise StatError(
            f"models fit on different row counts: {full.n_obs} vs {reduced.n_obs}"
        )
    if not set(reduced.columns) <= set(full.columns):
        extra = sorted(set(reduced.columns) - set(full.columns))
        raise StatError(f"models are not nested; reduced has extra columns: {extra}")
    df_num = reduced.df_resid - full.df_resid
    if df_num == 0:
        return FTestResult(0.0, 0.0, full.df_resid, 1.0)
    if full.rss <= 0.0:
        return FTestResult(math.inf, df_num, full.df_resid, 0.0)
    F = max(((reduced.rss - full.rss) / df_num) / (full.rss / full.df_resid), 0.0)
    return FTestResult(F, df_num, full.df_resid, f_sf(F, df_num, full.df_resid))


def pearson_r(x: Sequence[float], y: Sequence[float]) -> PearsonResult:
    """Pearson correlation with F = r^2 (n-2) / (1 - r^2) and two-sided p."""
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.size != yv.size:
        raise StatError(f"length mismatch: {xv.size} vs {yv.size}")
    if xv.size < 3:
        raise StatError(f"need at least 3 paired values, got {xv.size}")
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise StatError("zero variance in x or y")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    n = xv.size
    if abs(r) == 1.0:
        return PearsonResult(r, math.inf, 0.0)
    F = r * r * (n - 2) / (1.0 - r * r)
    return PearsonResult(r, F, f_sf(F, 1.0, float(n - 2)))


_FORMULA_RE = re.compile(r"^\s*(\S+)\s*~\s*(.+?)\s*$")


def parse_formula(formula: str) -> tuple[str, list[str]]:
    """Split ``y ~ a + b`` into the response name and predictor names."""
    m = _FORMULA_RE.match(formula)
    if not m:
        raise StatError(f"cannot parse formula {formula!r}; expected 'y ~ a + b'")
    response = m.group(1)
    predictors = [p.strip() for p in m.group(2).split("+")]
    if any(not p for p in predictors):
        raise StatError(f"empty predictor in formula {formula!r}")
    return response, predictors
