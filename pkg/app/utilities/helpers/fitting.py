# app/utilities/helpers/fitting.py
from typing import Sequence

import numpy as np


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Ordinary least-squares slope of log y against log x"""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 3:
        raise ValueError("need at least three (x, y) pairs of equal length")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs strictly positive values")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def linear_fit_r2(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """(slope, intercept, R^2) of an ordinary least-squares line"""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 3:
        raise ValueError("need at least three (x, y) pairs of equal length")
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2
