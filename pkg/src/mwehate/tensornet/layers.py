"""Layers with explicit forward and backward passes.

Every layer caches what its backward pass needs during forward.  Parameters
and their gradients live in the ``params`` / ``grads`` dicts under fixed
names; the optimizer walks them in registration order.  All math is plain
numpy so a fixed seed gives bit-identical runs.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError


def glorot_uniform(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def _check(cond: bool, layer: str, message: str):
    if not cond:
        raise ShapeError(f"{layer}: {message}")


class Layer:
    """Base: parameter registry plus the forward/backward contract."""

    name = "layer"

    def __init__(self):
        self.params: dict[str, np.ndarray] = {}
        self.grads: dict[str, np.ndarray] = {}

    def zero_grads(self):
        for key in self.params:
            self.grads[key] = np.zeros_like(self.params[key])

    def forward(self, *args):
        raise NotImplementedError

    def backward(self, grad):
        raise NotImplementedError


class Conv1D(Layer):
    """1-D convolution, "same" zero padding, stride 1.

    Input [B, T, C_in] -> output [B, T, filters].  Kernel weights are
    W[k, c_in, f].
    """

    name = "conv1d"

    def __init__(self, in_channels: int, filters: int, kernel: int, rng: np.random.Generator):
        super().__init__()
        self.in_channels = in_channels
        self.filters = filters
        self.kernel = kernel
        fan_in = kernel * in_channels
        fan_out = kernel * filters
        self.params["W"] = glorot_uniform(rng, (kernel, in_channels, filters), fan_in, fan_out)
        self.params["b"] = np.zeros(filters)
        self.zero_grads()

    def forward(self, x: np.ndarray) -> np.ndarray:
        _check(x.ndim == 3, self.name, f"expected [B,T,C], got {x.shape}")
        _check(
            x.shape[2] == self.in_channels,
            self.name,
            f"input has {x.shape[2]} channels, layer expects {self.in_channels}",
        )
        batch, length, _ = x.shape
        pad_left = (self.kernel - 1) // 2
        pad_right = self.kernel - 1 - pad_left
        xp = np.pad(x, ((0, 0), (pad_left, pad_right), (0, 0)))
        windows = np.stack([xp[:, i:i + length, :] for i in range(self.kernel)], axis=2)
        self._windows = windows
        self._pads = (pad_left, pad_right, length)
        return np.einsum("btkc,kcf->btf", windows, self.params["W"]) + self.params["b"]

    def backward(self, grad: np.ndarray) -> np.ndarray:
        windows = self._windows
        self.grads["W"] = np.einsum("btkc,btf->kcf", windows, grad)
        self.grads["b"] = grad.sum(axis=(0, 1))
        dwindows = np.einsum("btf,kcf->btkc", grad, self.params["W"])
        pad_left, pad_right, length = self._pads
        dxp = np.zeros(
            (grad.shape[0], length + pad_left + pad_right, self.in_channels)
        )
        for i in range(self.kernel):
            dxp[:, i:i + length, :] += dwindows[:, :, i, :]
        return dxp[:, pad_left:pad_left + length, :]


class Relu(Layer):
    name = "relu"

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._mask = x > 0
        return x * self._mask

    def backward(self, grad: np.ndarray) -> np.ndarray:
        return grad * self._mask


class MaxPool1D(Layer):
    """Width-2-style max pooling, stride = width, floor semantics: a trailing
    remainder shorter than the window is dropped."""

    name = "maxpool1d"

    def __init__(self, width: int = 2):
        super().__init__()
        self.width = width

    def forward(self, x: np.ndarray) -> np.ndarray:
        _check(x.ndim == 3, self.name, f"expected [B,T,C], got {x.shape}")
        batch, length, channels = x.shape
        out_len = length // self.width
        _check(out_len > 0, self.name, f"input length {length} shorter than pool width")
        trimmed = x[:, :out_len * self.width, :]
        blocks = trimmed.reshape(batch, out_len, self.width, channels)
        self._argmax = blocks.argmax(axis=2)
        self._in_shape = x.shape
        return blocks.max(axis=2)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        batch, out_len, channels = grad.shape
        dblocks = np.zeros((batch, out_len, self.width, channels))
        np.put_along_axis(dblocks, self._argmax[:, :, None, :], grad[:, :, None, :], axis=2)
        dx = np.zeros(self._in_shape)
        dx[:, :out_len * self.width, :] = dblocks.reshape(batch, out_len * self.width, channels)
        return dx


class Dense(Layer):
    name = "dense"

    def __init__(self, in_dim: int, out_dim: int, rng: np.random.Generator):
        super().__init__()
        self.in_dim = in_dim
        self.params["W"] = glorot_uniform(rng, (in_dim, out_dim), in_dim, out_dim)
        self.params["b"] = np.zeros(out_dim)
        self.zero_grads()

    def forward(self, x: np.ndarray) -> np.ndarray:
        _check(
            x.ndim == 2 and x.shape[1] == self.in_dim,
            self.name,
            f"expected [B,{self.in_dim}], got {x.shape}",
        )
        self._x = x
        return x @ self.params["W"] + self.params["b"]

    def backward(self, grad: np.ndarray) -> np.ndarray:
        self.grads["W"] = self._x.T @ grad
        self.grads["b"] = grad.sum(axis=0)
        return grad @ self.params["W"].T


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


class LSTM(Layer):
    """Single LSTM layer returning the final hidden state.

    Rows at positions >= the per-example length are masked out of the
    recurrence, so padding never leaks into the state; a zero-length example
    yields the zero state.  Gate order in the packed weight matrices is
    input, forget, cell, output.
    """

    name = "lstm"

    def __init__(self, input_dim: int, hidden: int, rng: np.random.Generator):
        super().__init__()
        self.input_dim = input_dim
        self.hidden = hidden
        self.params["Wx"] = glorot_uniform(rng, (input_dim, 4 * hidden), input_dim, 4 * hidden)
        self.params["Wh"] = glorot_uniform(rng, (hidden, 4 * hidden), hidden, 4 * hidden)
        self.params["b"] = np.zeros(4 * hidden)
        self.zero_grads()

    def forward(self, x: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        _check(
            x.ndim == 3 and x.shape[2] == self.input_dim,
            self.name,
            f"expected [B,T,{self.input_dim}], got {x.shape}",
        )
        _check(len(lengths) == x.shape[0], self.name, "lengths must have one entry per example")
        batch, steps, _ = x.shape
        h = np.zeros((batch, self.hidden))
        c = np.zeros((batch, self.hidden))
        self._cache = []
        self._x_shape = x.shape
        for t in range(steps):
            mask = (np.asarray(lengths) > t).astype(float)[:, None]
            z = x[:, t, :] @ self.params["Wx"] + h @ self.params["Wh"] + self.params["b"]
            zi, zf, zg, zo = np.split(z, 4, axis=1)
            i, f, o = _sigmoid(zi), _sigmoid(zf), _sigmoid(zo)
            g = np.tanh(zg)
            c_new = f * c + i * g
            tanh_c = np.tanh(c_new)
            h_new = o * tanh_c
            self._cache.append((x[:, t, :], h, c, i, f, g, o, tanh_c, mask))
            c = mask * c_new + (1.0 - mask) * c
            h = mask * h_new + (1.0 - mask) * h
        self._steps = steps
        return h

    def backward(self, grad_h: np.ndarray) -> np.ndarray:
        dWx = np.zeros_like(self.params["Wx"])
        dWh = np.zeros_like(self.params["Wh"])
        db = np.zeros_like(self.params["b"])
        dx = np.zeros(self._x_shape)
        dh = grad_h.copy()
        dc = np.zeros_like(grad_h)
        for t in range(self._steps - 1, -1, -1):
            x_t, h_prev, c_prev, i, f, g, o, tanh_c, mask = self._cache[t]
            dh_new = dh * mask
            dh_carry = dh * (1.0 - mask)
            dc_new = dc * mask
            dc_carry = dc * (1.0 - mask)
            do = dh_new * tanh_c
            dc_new = dc_new + dh_new * o * (1.0 - tanh_c ** 2)
            di = dc_new * g
            df = dc_new * c_prev
            dg = dc_new * i
            dz = np.concatenate(
                [
                    di * i * (1.0 - i),
                    df * f * (1.0 - f),
                    dg * (1.0 - g ** 2),
                    do * o * (1.0 - o),
                ],
                axis=1,
            )
            dWx += x_t.T @ dz
            dWh += h_prev.T @ dz
            db += dz.sum(axis=0)
            dx[:, t, :] = dz @ self.params["Wx"].T
            dh = dz @ self.params["Wh"].T + dh_carry
            dc = dc_new * f + dc_carry
        self.grads["Wx"] = dWx
        self.grads["Wh"] = dWh
        self.grads["b"] = db
        return dx


class Concat(Layer):
    """Concatenate feature vectors along the last axis."""

    name = "concat"

    def forward(self, parts: list[np.ndarray]) -> np.ndarray:
        self._widths = [p.shape[1] for p in parts]
        return np.concatenate(parts, axis=1)

    def backward(self, grad: np.ndarray) -> list[np.ndarray]:
        splits = np.cumsum(self._widths)[:-1]
        return np.split(grad, splits, axis=1)


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def softmax_cross_entropy(logits: np.ndarray, labels: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean cross-entropy over the batch; returns (loss, probabilities)."""
    if logits.ndim != 2 or len(labels) != logits.shape[0]:
        raise ShapeError(
            f"softmax_cross_entropy: logits {logits.shape} vs {len(labels)} labels"
        )
    probs = softmax(logits)
    picked = probs[np.arange(len(labels)), labels]
    loss = float(-np.log(np.maximum(picked, 1e-300)).mean())
    return loss, probs


def softmax_cross_entropy_backward(probs: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Gradient of the mean cross-entropy wrt the logits."""
    grad = probs.copy()
    grad[np.arange(len(labels)), labels] -= 1.0
    return grad / len(labels)
