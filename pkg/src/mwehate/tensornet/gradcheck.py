"""Central-difference verification of the analytic gradients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .layers import Layer, softmax_cross_entropy, softmax_cross_entropy_backward
from .model import ThreeBranchModel
from .train import ArrayDataset, _forward_batch


@dataclass(frozen=True)
class GradCheckResult:
    max_rel_error: float
    worst_param: str
    per_param: dict[str, float]


def check_param_gradients(
    named_layers: Sequence[tuple[str, Layer]],
    run: Callable[[bool], float],
    epsilon: float = 1e-5,
    max_entries_per_tensor: int | None = None,
    sample_seed: int = 0,
) -> GradCheckResult:
    """Compares analytic parameter gradients against central differences.

    ``run(compute_grads)`` evaluates the scalar loss from the layers' current
    parameters; with compute_grads=True it must also backpropagate so each
    layer's grads dict is filled.  Relative error per entry is
    |a - n| / max(|a| + |n|, 1e-12).  With max_entries_per_tensor set, only a
    seeded sample of entries per tensor is probed.
    """
    run(True)
    analytic = {
        f"{name}.{key}": layer.grads[key].copy()
        for name, layer in named_layers
        for key in layer.params
    }
    rng = np.random.default_rng(sample_seed)
    per_param: dict[str, float] = {}
    worst = ("", 0.0)
    for name, layer in named_layers:
        for key in layer.params:
            qual = f"{name}.{key}"
            flat = layer.params[key].reshape(-1)
            n = flat.shape[0]
            if max_entries_per_tensor is not None and n > max_entries_per_tensor:
                indices = rng.choice(n, size=max_entries_per_tensor, replace=False)
            else:
                indices = np.arange(n)
            a_flat = analytic[qual].reshape(-1)
            tensor_worst = 0.0
            for i in indices:
                saved = flat[i]
                flat[i] = saved + epsilon
                plus = run(False)
                flat[i] = saved - epsilon
                minus = run(False)
                flat[i] = saved
                numeric = (plus - minus) / (2.0 * epsilon)
                a = a_flat[i]
                rel = abs(a - numeric) / max(abs(a) + abs(numeric), 1e-12)
                tensor_worst = max(tensor_worst, rel)
            per_param[qual] = tensor_worst
            if tensor_worst > worst[1]:
                worst = (qual, tensor_worst)
    return GradCheckResult(worst[1], worst[0], per_param)


def gradient_check(
    model: ThreeBranchModel,
    data: ArrayDataset,
    epsilon: float = 1e-5,
    max_entries_per_tensor: int | None = None,
    sample_seed: int = 0,
) -> GradCheckResult:
    """Checks the full composite model under the cross-entropy loss."""

    def run(compute_grads: bool) -> float:
        logits = _forward_batch(model, data)
        loss, probs = softmax_cross_entropy(logits, data.labels)
        if compute_grads:
            model.backward(softmax_cross_entropy_backward(probs, data.labels))
        return loss

    seen: dict[int, tuple[str, Layer]] = {}
    for name, layer, _key in model.parameter_items():
        seen.setdefault(id(layer), (name.split(".")[0], layer))
    return check_param_gradients(
        list(seen.values()), run, epsilon, max_entries_per_tensor, sample_seed
    )
