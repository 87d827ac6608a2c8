"""SGD with momentum, Adam and RMSprop updates on lists of numpy parameters."""

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from lblab.errors import InvalidInputError

from .config import OptimizerSpec

Array = npt.NDArray[np.float64]


@dataclass
class OptimizerState:
    """Per-parameter buffers of an optimizer.

    :param step: Number of updates applied so far.
    :param first: Momentum buffer (sgd) or first moment (adam).
    :param second: Squared-gradient average (adam, rmsprop).
    """

    step: int = 0
    first: list[Array] = field(default_factory=list)
    second: list[Array] = field(default_factory=list)

    @classmethod
    def zeros_like(cls, params: list[Array]) -> "OptimizerState":
        """Return a zero state for the given parameters.

        :param params: The parameters.
        :return: The state.
        """
        return cls(0, [np.zeros_like(p) for p in params], [np.zeros_like(p) for p in params])


def optimizer_step(
    state: OptimizerState | None,
    params: list[Array],
    grads: list[Array],
    spec: OptimizerSpec,
) -> tuple[list[Array], OptimizerState]:
    """Apply one update. Inputs are not modified.

    - sgd: ``v = momentum * v + g``, ``p -= lr * v``
    - adam: bias-corrected moments, ``p -= lr * m_hat / (sqrt(v_hat) + eps)``
    - rmsprop: ``s = rho * s + (1 - rho) * g**2``, ``p -= lr * g / sqrt(s + eps)``

    :param state: State from the previous step, or None on the first step.
    :param params: Current parameters.
    :param grads: Gradients, same shapes as ``params``.
    :param spec: The optimizer.
    :return: Updated parameters and state.
    """
    if len(params) != len(grads) or any(p.shape != g.shape for p, g in zip(params, grads, strict=False)):
        raise InvalidInputError("Gradients must match the parameter shapes")
    if state is None:
        state = OptimizerState.zeros_like(params)
    elif len(state.first) != len(params) or any(buffer.shape != p.shape for buffer, p in zip(state.first, params, strict=False)):
        raise InvalidInputError("Optimizer state does not match the parameter shapes")

    step = state.step + 1
    lr = spec.learning_rate
    new_params: list[Array] = []
    first: list[Array] = []
    second: list[Array] = []

    match spec.kind:
        case "sgd":
            for p, g, v in zip(params, grads, state.first, strict=True):
                v = spec.momentum * v + g
                new_params.append(p - lr * v)
                first.append(v)
            second = list(state.second)
        case "adam":
            for p, g, m, v in zip(params, grads, state.first, state.second, strict=True):
                m = spec.beta1 * m + (1.0 - spec.beta1) * g
                v = spec.beta2 * v + (1.0 - spec.beta2) * g**2
                m_hat = m / (1.0 - spec.beta1**step)
                v_hat = v / (1.0 - spec.beta2**step)
                new_params.append(p - lr * m_hat / (np.sqrt(v_hat) + spec.epsilon))
                first.append(m)
                second.append(v)
        case "rmsprop":
            for p, g, s in zip(params, grads, state.second, strict=True):
                s = spec.rho * s + (1.0 - spec.rho) * g**2
                new_params.append(p - lr * g / np.sqrt(s + spec.epsilon))
                second.append(s)
            first = list(state.first)
        case _:
            raise InvalidInputError(f"Unknown optimizer '{spec.kind}'")

    return new_params, OptimizerState(step, first, second)
