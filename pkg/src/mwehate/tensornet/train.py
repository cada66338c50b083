"""Minibatch Adam training with early stopping on validation macro-F1."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeError, TrainingError
from ..featurize import ExampleFeatures
from ..metrics import macro_f1
from .layers import softmax_cross_entropy, softmax_cross_entropy_backward
from .model import ThreeBranchModel


@dataclass(frozen=True)
class Hyperparams:
    learning_rate: float = 1e-3
    batch_size: int = 32
    max_epochs: int = 30
    patience: int = 5
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self):
        if self.learning_rate <= 0 or self.batch_size <= 0 or self.max_epochs <= 0:
            raise TrainingError("learning_rate, batch_size and max_epochs must be positive")
        if self.patience < 0:
            raise TrainingError("patience must be non-negative")


@dataclass(frozen=True)
class ArrayDataset:
    """Feature arrays stacked along the batch axis."""

    onehot: np.ndarray
    mwe_embeds: np.ndarray
    mwe_lens: np.ndarray
    sentence_vecs: np.ndarray
    labels: np.ndarray
    tweet_ids: tuple[str, ...] = ()

    def __len__(self) -> int:
        return self.labels.shape[0]

    def subset(self, indices: np.ndarray) -> "ArrayDataset":
        ids = tuple(self.tweet_ids[i] for i in indices) if self.tweet_ids else ()
        return ArrayDataset(
            self.onehot[indices], self.mwe_embeds[indices], self.mwe_lens[indices],
            self.sentence_vecs[indices], self.labels[indices], ids,
        )


def stack_examples(examples: list[ExampleFeatures]) -> ArrayDataset:
    if not examples:
        raise TrainingError("cannot stack an empty example list")
    return ArrayDataset(
        onehot=np.stack([e.onehot for e in examples]),
        mwe_embeds=np.stack([e.mwe_embeds for e in examples]),
        mwe_lens=np.array([e.mwe_len for e in examples], dtype=int),
        sentence_vecs=np.stack([e.sentence_vec for e in examples]),
        labels=np.array([e.label for e in examples], dtype=int),
        tweet_ids=tuple(e.tweet_id for e in examples),
    )


class Adam:
    """Per-parameter moment estimates keyed by qualified parameter name."""

    def __init__(self, model: ThreeBranchModel, hp: Hyperparams):
        self.hp = hp
        self.step_count = 0
        self._m = {name: np.zeros_like(layer.params[key])
                   for name, layer, key in model.parameter_items()}
        self._v = {name: np.zeros_like(layer.params[key])
                   for name, layer, key in model.parameter_items()}

    def step(self, model: ThreeBranchModel) -> None:
        hp = self.hp
        self.step_count += 1
        t = self.step_count
        for name, layer, key in model.parameter_items():
            g = layer.grads[key]
            m = self._m[name] = hp.beta1 * self._m[name] + (1 - hp.beta1) * g
            v = self._v[name] = hp.beta2 * self._v[name] + (1 - hp.beta2) * g * g
            m_hat = m / (1 - hp.beta1 ** t)
            v_hat = v / (1 - hp.beta2 ** t)
            layer.params[key] = layer.params[key] - hp.learning_rate * m_hat / (
                np.sqrt(v_hat) + hp.epsilon
            )


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    train_loss: float
    val_macro_f1: float


@dataclass(frozen=True)
class TrainResult:
    history: tuple[EpochStats, ...]
    best_epoch: int
    best_val_macro_f1: float
    stopped_early: bool = False
    extra: dict = field(default_factory=dict)


def _forward_batch(model: ThreeBranchModel, data: ArrayDataset) -> np.ndarray:
    return model.forward(data.onehot, data.mwe_embeds, data.mwe_lens, data.sentence_vecs)


def predict_batch(
    model: ThreeBranchModel, data: ArrayDataset, batch_size: int = 256
) -> np.ndarray:
    """Predicted labels; ties in the probabilities go to the lowest class
    index (np.argmax picks the first maximum)."""
    out = np.empty(len(data), dtype=int)
    for start in range(0, len(data), batch_size):
        idx = np.arange(start, min(start + batch_size, len(data)))
        logits = _forward_batch(model, data.subset(idx))
        out[idx] = np.argmax(logits, axis=1)
    return out


def predict_proba_batch(
    model: ThreeBranchModel, data: ArrayDataset, batch_size: int = 256
) -> np.ndarray:
    rows = []
    for start in range(0, len(data), batch_size):
        idx = np.arange(start, min(start + batch_size, len(data)))
        logits = _forward_batch(model, data.subset(idx))
        shifted = logits - logits.max(axis=1, keepdims=True)
        e = np.exp(shifted)
        rows.append(e / e.sum(axis=1, keepdims=True))
    return np.concatenate(rows, axis=0)


def train(
    model: ThreeBranchModel,
    train_data: ArrayDataset,
    val_data: ArrayDataset,
    hp: Hyperparams,
    shuffle_seed: int = 0,
) -> TrainResult:
    """Trains in place and restores the best-validation weights before
    returning.  Epoch order of examples depends only on shuffle_seed."""
    if len(train_data) == 0:
        raise TrainingError("training set is empty")
    if len(val_data) == 0:
        raise TrainingError("validation set is empty")
    n_classes = model.config.n_classes
    for name, arr in (("train", train_data.labels), ("val", val_data.labels)):
        if arr.min() < 0 or arr.max() >= n_classes:
            raise ShapeError(f"{name} labels out of range for {n_classes} classes")

    optimizer = Adam(model, hp)
    rng = np.random.default_rng(shuffle_seed)
    best_weights = model.get_weights()
    best_f1 = -1.0
    best_epoch = 0
    no_improve = 0
    history: list[EpochStats] = []
    stopped_early = False

    for epoch in range(1, hp.max_epochs + 1):
        order = rng.permutation(len(train_data))
        loss_sum = 0.0
        for start in range(0, len(order), hp.batch_size):
            batch = train_data.subset(order[start:start + hp.batch_size])
            logits = _forward_batch(model, batch)
            loss, probs = softmax_cross_entropy(logits, batch.labels)
            model.backward(softmax_cross_entropy_backward(probs, batch.labels))
            optimizer.step(model)
            loss_sum += loss * len(batch)
        train_loss = loss_sum / len(train_data)

        val_pred = predict_batch(model, val_data)
        val_f1 = macro_f1(val_data.labels, val_pred, n_classes)
        history.append(EpochStats(epoch, float(train_loss), float(val_f1)))

        if val_f1 > best_f1:
            best_f1 = val_f1
            best_epoch = epoch
            best_weights = model.get_weights()
            no_improve = 0
        else:
            no_improve += 1
        if no_improve >= hp.patience:
            stopped_early = epoch < hp.max_epochs
            break

    model.set_weights(best_weights)
    return TrainResult(tuple(history), best_epoch, best_f1, stopped_early)
