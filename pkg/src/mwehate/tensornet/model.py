"""The three-branch classifier and its serialized form.

Branch A runs three Conv1D+ReLU+MaxPool blocks over the one-hot category
sequence and flattens.  Branch B runs one LSTM over the MWE-member embedding
sequence and keeps the final hidden state.  Branch C passes the sentence
vector through.  The concatenation goes through two ReLU dense layers and a
softmax output with one neuron per class.  The sentence-only baseline is the
same network with branches A and B removed.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import IO

import numpy as np

from ..errors import ShapeError
from .layers import LSTM, Concat, Conv1D, Dense, Layer, MaxPool1D, Relu, softmax

THREE_BRANCH = ("onehot", "mwe", "sentence")
SENTENCE_ONLY = ("sentence",)


@dataclass(frozen=True)
class ModelConfig:
    onehot_cols: int
    mwe_embed_dim: int
    sentence_dim: int
    n_classes: int
    seed: int = 0
    conv_filters: tuple[int, int, int] = (32, 16, 8)
    kernel_size: int = 3
    pool_width: int = 2
    lstm_units: int = 192
    dense_units: int = 256
    max_tokens: int = 64
    max_mwe_tokens: int = 16
    branches: tuple[str, ...] = THREE_BRANCH

    def __post_init__(self):
        positive = (
            self.onehot_cols, self.mwe_embed_dim, self.sentence_dim,
            self.kernel_size, self.pool_width, self.lstm_units,
            self.dense_units, self.max_tokens, self.max_mwe_tokens,
            *self.conv_filters,
        )
        if any(v <= 0 for v in positive):
            raise ShapeError("all model dimensions must be positive")
        if self.n_classes < 2:
            raise ShapeError("n_classes must be at least 2")
        unknown = set(self.branches) - set(THREE_BRANCH)
        if unknown or not self.branches:
            raise ShapeError(f"invalid branch set {self.branches!r}")

    @property
    def conv_out_len(self) -> int:
        length = self.max_tokens
        for _ in self.conv_filters:
            length //= self.pool_width
        if length == 0:
            raise ShapeError("max_tokens too small for the pooling stack")
        return length

    @property
    def head_in_dim(self) -> int:
        dim = 0
        if "onehot" in self.branches:
            dim += self.conv_out_len * self.conv_filters[-1]
        if "mwe" in self.branches:
            dim += self.lstm_units
        if "sentence" in self.branches:
            dim += self.sentence_dim
        return dim


class ThreeBranchModel:
    """Builds all layers from a config with a single seeded PRNG, so equal
    seeds give identical initial parameters."""

    def __init__(self, config: ModelConfig):
        self.config = config
        rng = np.random.default_rng(config.seed)
        self.conv_blocks: list[tuple[Conv1D, Relu, MaxPool1D]] = []
        if "onehot" in config.branches:
            in_ch = config.onehot_cols
            for filters in config.conv_filters:
                conv = Conv1D(in_ch, filters, config.kernel_size, rng)
                self.conv_blocks.append((conv, Relu(), MaxPool1D(config.pool_width)))
                in_ch = filters
        self.lstm = (
            LSTM(config.mwe_embed_dim, config.lstm_units, rng)
            if "mwe" in config.branches else None
        )
        self.concat = Concat()
        self.dense1 = Dense(config.head_in_dim, config.dense_units, rng)
        self.relu1 = Relu()
        self.dense2 = Dense(config.dense_units, config.dense_units, rng)
        self.relu2 = Relu()
        self.out = Dense(config.dense_units, config.n_classes, rng)

    def forward(
        self,
        onehot: np.ndarray,
        mwe_embeds: np.ndarray,
        mwe_lens: np.ndarray,
        sentence_vecs: np.ndarray,
    ) -> np.ndarray:
        """Batch forward pass to logits [B, n_classes]."""
        parts = []
        if self.conv_blocks:
            a = onehot
            for conv, relu, pool in self.conv_blocks:
                a = pool.forward(relu.forward(conv.forward(a)))
            parts.append(a.reshape(a.shape[0], -1))
        if self.lstm is not None:
            parts.append(self.lstm.forward(mwe_embeds, mwe_lens))
        if "sentence" in self.config.branches:
            if sentence_vecs.ndim != 2 or sentence_vecs.shape[1] != self.config.sentence_dim:
                raise ShapeError(
                    f"sentence branch: expected [B,{self.config.sentence_dim}], "
                    f"got {sentence_vecs.shape}"
                )
            parts.append(sentence_vecs)
        h = self.concat.forward(parts)
        h = self.relu1.forward(self.dense1.forward(h))
        h = self.relu2.forward(self.dense2.forward(h))
        return self.out.forward(h)

    def backward(self, dlogits: np.ndarray) -> None:
        """Backpropagate from the logit gradient; fills every layer's grads."""
        g = self.out.backward(dlogits)
        g = self.dense1.backward(self.relu1.backward(
            self.dense2.backward(self.relu2.backward(g))
        ))
        parts = self.concat.backward(g)
        idx = 0
        if self.conv_blocks:
            last_conv = self.conv_blocks[-1][0]
            ga = parts[idx].reshape(
                -1, self.config.conv_out_len, last_conv.filters
            )
            for conv, relu, pool in reversed(self.conv_blocks):
                ga = conv.backward(relu.backward(pool.backward(ga)))
            idx += 1
        if self.lstm is not None:
            self.lstm.backward(parts[idx])
            idx += 1

    def predict_proba(self, onehot, mwe_embeds, mwe_lens, sentence_vecs) -> np.ndarray:
        return softmax(self.forward(onehot, mwe_embeds, mwe_lens, sentence_vecs))

    def parameter_items(self) -> list[tuple[str, Layer, str]]:
        """Stable (qualified name, layer, key) triples for optimizers and IO."""
        items = []
        for bi, (conv, _, _) in enumerate(self.conv_blocks):
            for key in conv.params:
                items.append((f"conv{bi + 1}.{key}", conv, key))
        if self.lstm is not None:
            for key in self.lstm.params:
                items.append((f"lstm.{key}", self.lstm, key))
        for name, layer in (("dense1", self.dense1), ("dense2", self.dense2), ("out", self.out)):
            for key in layer.params:
                items.append((f"{name}.{key}", layer, key))
        return items

    def get_weights(self) -> dict[str, np.ndarray]:
        return {name: layer.params[key].copy() for name, layer, key in self.parameter_items()}

    def set_weights(self, weights: dict[str, np.ndarray]) -> None:
        for name, layer, key in self.parameter_items():
            if name not in weights:
                raise ShapeError(f"checkpoint is missing parameter {name!r}")
            value = np.asarray(weights[name])
            if value.shape != layer.params[key].shape:
                raise ShapeError(
                    f"parameter {name!r}: checkpoint shape {value.shape} != "
                    f"model shape {layer.params[key].shape}"
                )
            layer.params[key] = value.copy()

    def zero_branch_parameters(self) -> None:
        """Zero every branch-A and branch-B parameter (head untouched)."""
        for conv, _, _ in self.conv_blocks:
            for key in conv.params:
                conv.params[key] = np.zeros_like(conv.params[key])
        if self.lstm is not None:
            for key in self.lstm.params:
                self.lstm.params[key] = np.zeros_like(self.lstm.params[key])


def build_model(config: ModelConfig) -> ThreeBranchModel:
    return ThreeBranchModel(config)


@dataclass(frozen=True)
class Checkpoint:
    config: ModelConfig
    weights: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def to_model(self) -> ThreeBranchModel:
        model = ThreeBranchModel(self.config)
        model.set_weights(self.weights)
        return model


def save_checkpoint(model: ThreeBranchModel, metadata: dict, out: IO[str]) -> None:
    """JSON checkpoint: config, named tensors (shape + flat row-major data),
    metadata.  float64 values round-trip exactly through JSON."""
    payload = {
        "config": _config_to_json(model.config),
        "params": {
            name: {
                "shape": list(layer.params[key].shape),
                "data": layer.params[key].ravel().tolist(),
            }
            for name, layer, key in model.parameter_items()
        },
        "metadata": metadata,
    }
    json.dump(payload, out, sort_keys=True)
    out.write("\n")


def load_checkpoint(source: IO[str]) -> Checkpoint:
    payload = json.load(source)
    config = config_from_json(payload["config"])
    weights = {
        name: np.array(entry["data"], dtype=float).reshape(entry["shape"])
        for name, entry in payload["params"].items()
    }
    return Checkpoint(config, weights, payload.get("metadata", {}))


def _config_to_json(config: ModelConfig) -> dict:
    obj = asdict(config)
    obj["conv_filters"] = list(config.conv_filters)
    obj["branches"] = list(config.branches)
    return obj


def config_from_json(obj: dict) -> ModelConfig:
    kwargs = dict(obj)
    kwargs["conv_filters"] = tuple(kwargs["conv_filters"])
    kwargs["branches"] = tuple(kwargs["branches"])
    return ModelConfig(**kwargs)
