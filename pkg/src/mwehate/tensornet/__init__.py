"""Minimal dense-tensor neural stack: explicit forward/backward layers, the
three-branch classifier, seeded training, and finite-difference checking."""

from .layers import (
    Concat,
    Conv1D,
    Dense,
    LSTM,
    MaxPool1D,
    Relu,
    glorot_uniform,
    softmax,
    softmax_cross_entropy,
    softmax_cross_entropy_backward,
)
from .model import (
    SENTENCE_ONLY,
    THREE_BRANCH,
    Checkpoint,
    ModelConfig,
    ThreeBranchModel,
    build_model,
    load_checkpoint,
    save_checkpoint,
)
from .train import (
    Adam,
    ArrayDataset,
    EpochStats,
    Hyperparams,
    TrainResult,
    predict_batch,
    predict_proba_batch,
    stack_examples,
    train,
)
from .gradcheck import GradCheckResult, check_param_gradients, gradient_check

__all__ = [
    "Adam",
    "ArrayDataset",
    "Checkpoint",
    "Concat",
    "Conv1D",
    "Dense",
    "EpochStats",
    "GradCheckResult",
    "Hyperparams",
    "LSTM",
    "MaxPool1D",
    "ModelConfig",
    "Relu",
    "SENTENCE_ONLY",
    "THREE_BRANCH",
    "ThreeBranchModel",
    "TrainResult",
    "build_model",
    "check_param_gradients",
    "glorot_uniform",
    "gradient_check",
    "load_checkpoint",
    "predict_batch",
    "predict_proba_batch",
    "save_checkpoint",
    "softmax",
    "softmax_cross_entropy",
    "softmax_cross_entropy_backward",
    "stack_examples",
    "train",
]
