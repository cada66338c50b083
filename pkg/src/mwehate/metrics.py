"""Evaluation metrics and the paired significance test."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import MetricsError


def _as_labels(values, n_classes: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=int)
    if arr.ndim != 1:
        raise MetricsError(f"{name} must be one-dimensional")
    if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
        raise MetricsError(f"{name} contains labels outside [0, {n_classes})")
    return arr


def confusion_matrix(y_true, y_pred, n_classes: int) -> np.ndarray:
    """Counts with rows indexed by true label, columns by predicted."""
    if n_classes < 1:
        raise MetricsError("n_classes must be positive")
    t = _as_labels(y_true, n_classes, "y_true")
    p = _as_labels(y_pred, n_classes, "y_pred")
    if t.shape != p.shape:
        raise MetricsError(f"length mismatch: {t.shape[0]} true vs {p.shape[0]} predicted")
    cm = np.zeros((n_classes, n_classes), dtype=int)
    np.add.at(cm, (t, p), 1)
    return cm


def per_class_f1(cm: np.ndarray) -> np.ndarray:
    """Per-class F1 from a confusion matrix.  Any zero denominator (no
    predictions, no true examples, or P+R = 0) gives that class F1 = 0."""
    cm = np.asarray(cm)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1]:
        raise MetricsError("confusion matrix must be square")
    tp = np.diag(cm).astype(float)
    pred_totals = cm.sum(axis=0).astype(float)
    true_totals = cm.sum(axis=1).astype(float)
    precision = np.divide(tp, pred_totals, out=np.zeros_like(tp), where=pred_totals > 0)
    recall = np.divide(tp, true_totals, out=np.zeros_like(tp), where=true_totals > 0)
    denom = precision + recall
    return np.divide(2 * precision * recall, denom,
                     out=np.zeros_like(tp), where=denom > 0)


def macro_f1(y_true, y_pred, n_classes: int) -> float:
    """Unweighted mean of per-class F1 over all n_classes classes."""
    return float(per_class_f1(confusion_matrix(y_true, y_pred, n_classes)).mean())


def accuracy(y_true, y_pred) -> float:
    t = np.asarray(y_true)
    p = np.asarray(y_pred)
    if t.shape != p.shape:
        raise MetricsError(f"length mismatch: {t.shape} vs {p.shape}")
    if t.size == 0:
        raise MetricsError("cannot compute accuracy of zero examples")
    return float(np.mean(t == p))


def exact_binomial_p(n01: int, n10: int) -> float:
    """Two-sided exact test that two systems' disagreements are symmetric.

    n01 and n10 count the discordant pairs in each direction.  Under the
    null each discordant pair is a fair coin flip, so with n = n01 + n10 and
    m = max(n01, n10) the p-value is 2 * sum_{k=m..n} C(n, k) / 2^n, capped
    at 1.  No discordant pairs gives p = 1.
    """
    if n01 < 0 or n10 < 0:
        raise MetricsError("discordant counts must be non-negative")
    n = n01 + n10
    if n == 0:
        return 1.0
    m = max(n01, n10)
    tail = sum(comb(n, k) for k in range(m, n + 1))
    return min(1.0, (2 * tail) / (2 ** n))


@dataclass(frozen=True)
class PairedComparison:
    n01: int
    n10: int
    p_value: float


def compare_predictions(y_true, pred_a, pred_b) -> PairedComparison:
    """Counts examples only one system got right (n01: a right / b wrong,
    n10: the reverse) and runs the exact test on them."""
    t = np.asarray(y_true)
    a = np.asarray(pred_a)
    b = np.asarray(pred_b)
    if not (t.shape == a.shape == b.shape and t.ndim == 1):
        raise MetricsError("y_true, pred_a and pred_b must be equal-length 1-d arrays")
    a_right = a == t
    b_right = b == t
    n01 = int(np.sum(a_right & ~b_right))
    n10 = int(np.sum(~a_right & b_right))
    return PairedComparison(n01, n10, exact_binomial_p(n01, n10))
