"""Multilayer perceptron with softmax output and cross-entropy loss, in numpy double precision."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from lblab.errors import InvalidInputError

from .config import ModelSpec

Array = npt.NDArray[np.float64]

_INIT_GAIN = {"he": 2.0, "lecun": 1.0}


@dataclass
class MLP:
    """Parameters of a multilayer perceptron.

    Layer k maps ``h -> h @ weights[k].T + biases[k]``; ``weights[k]`` has shape (fan_out, fan_in).

    :param spec: The architecture.
    :param weights: One weight matrix per layer.
    :param biases: One bias vector per layer.
    """

    spec: ModelSpec
    weights: list[Array]
    biases: list[Array]

    def parameters(self) -> list[Array]:
        """Return the parameters in optimizer order: weights and bias of layer 1, then layer 2, ..."""
        return [param for pair in zip(self.weights, self.biases, strict=True) for param in pair]

    def with_parameters(self, params: list[Array]) -> "MLP":
        """Return a model with the same spec and new parameters in :meth:`parameters` order.

        :param params: The parameters.
        :return: The new model.
        """
        return MLP(self.spec, list(params[0::2]), list(params[1::2]))


def init_model(spec: ModelSpec, seed: int) -> MLP:
    """Draw initial parameters, deterministic in (spec, seed).

    Weights are normal with standard deviation ``sqrt(gain / fan_in)``; biases are zero.

    :param spec: The architecture.
    :param seed: The seed.
    :return: The initialized model.
    """
    rng = np.random.default_rng(seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(spec.layer_sizes[:-1], spec.layer_sizes[1:], strict=True):
        weights.append(rng.normal(0.0, np.sqrt(_INIT_GAIN[spec.init_scheme] / fan_in), size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return MLP(spec, weights, biases)


def softmax(logits: Array) -> Array:
    """Row-wise softmax, stabilized by subtracting the row maximum.

    :param logits: Array of shape (batch, classes).
    :return: Probabilities of the same shape.
    """
    shifted = np.exp(logits - logits.max(axis=1, keepdims=True))
    return shifted / shifted.sum(axis=1, keepdims=True)


def _activate(spec: ModelSpec, pre: Array) -> Array:
    if spec.activation == "relu":
        return np.maximum(pre, 0.0)
    return np.tanh(pre)


def _activation_grad(spec: ModelSpec, pre: Array, post: Array) -> Array:
    if spec.activation == "relu":
        return (pre > 0.0).astype(np.float64)
    return 1.0 - post**2


def _check_inputs(model: MLP, inputs: npt.ArrayLike) -> Array:
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim != 2 or inputs.shape[1] != model.spec.input_dim:
        raise InvalidInputError(f"Expected inputs of shape (batch, {model.spec.input_dim}), got {inputs.shape}")
    return inputs


def _forward_pass(model: MLP, inputs: Array) -> tuple[list[Array], list[Array], Array]:
    """Return the pre-activations, the layer inputs and the output probabilities."""
    pres: list[Array] = []
    layer_inputs: list[Array] = [inputs]
    hidden = inputs
    last = len(model.weights) - 1
    for k, (weight, bias) in enumerate(zip(model.weights, model.biases, strict=True)):
        pre = hidden @ weight.T + bias
        pres.append(pre)
        if k < last:
            hidden = _activate(model.spec, pre)
            layer_inputs.append(hidden)
    return pres, layer_inputs, softmax(pres[-1])


def forward(model: MLP, inputs: npt.ArrayLike) -> Array:
    """Compute class probabilities.

    :param model: The model.
    :param inputs: Array of shape (batch, input_dim).
    :return: Array of shape (batch, classes), rows sum to 1.
    """
    return _forward_pass(model, _check_inputs(model, inputs))[2]


def cross_entropy(probabilities: Array, class_indices: npt.NDArray[np.int64]) -> float:
    """Mean negative log-probability of the true class.

    :param probabilities: Array of shape (batch, classes).
    :param class_indices: 0-based true classes.
    :return: The mean loss.
    """
    true_probs = probabilities[np.arange(class_indices.size), class_indices]
    return float(-np.log(np.maximum(true_probs, np.finfo(np.float64).tiny)).mean())


def backward(model: MLP, inputs: npt.ArrayLike, class_indices: npt.ArrayLike) -> list[Array]:
    """Backpropagate the mean cross-entropy of a batch.

    :param model: The model.
    :param inputs: Array of shape (batch, input_dim).
    :param class_indices: 0-based true classes of the batch.
    :return: Gradients in :meth:`MLP.parameters` order.
    """
    inputs = _check_inputs(model, inputs)
    class_indices = np.asarray(class_indices, dtype=np.int64)
    if class_indices.shape != (inputs.shape[0],):
        raise InvalidInputError(f"Expected {inputs.shape[0]} class indices, got shape {class_indices.shape}")
    if class_indices.size and (class_indices.min() < 0 or class_indices.max() >= model.spec.n_classes):
        raise InvalidInputError(f"Class indices must lie in [0, {model.spec.n_classes})")

    pres, layer_inputs, probabilities = _forward_pass(model, inputs)

    # Softmax cross-entropy: d loss / d logits = (p - onehot) / batch
    delta = probabilities.copy()
    delta[np.arange(class_indices.size), class_indices] -= 1.0
    delta /= inputs.shape[0]

    grads: list[Array] = []
    for k in range(len(model.weights) - 1, -1, -1):
        grads.append(delta.sum(axis=0))
        grads.append(delta.T @ layer_inputs[k])
        if k > 0:
            delta = (delta @ model.weights[k]) * _activation_grad(model.spec, pres[k - 1], layer_inputs[k])
    grads.reverse()
    return grads
