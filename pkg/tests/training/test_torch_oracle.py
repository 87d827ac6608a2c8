import numpy as np
import pytest
import torch

from lblab.training import ModelSpec, OptimizerSpec, backward, init_model, optimizer_step


def _torch_parameters(params: list[np.ndarray]) -> list[torch.Tensor]:
    return [torch.tensor(p, dtype=torch.float64, requires_grad=True) for p in params]


def _torch_loss(params: list[torch.Tensor], x: np.ndarray, y: np.ndarray, activation: str) -> torch.Tensor:
    hidden = torch.tensor(x, dtype=torch.float64)
    n_layers = len(params) // 2
    for k in range(n_layers):
        hidden = hidden @ params[2 * k].T + params[2 * k + 1]
        if k < n_layers - 1:
            hidden = torch.relu(hidden) if activation == "relu" else torch.tanh(hidden)
    return torch.nn.functional.cross_entropy(hidden, torch.tensor(y, dtype=torch.long))


class TestTorchOracle:
    @pytest.mark.parametrize("activation", ["relu", "tanh"])
    def test_gradients_match_autograd(self, activation):
        rng = np.random.default_rng(0)
        model = init_model(ModelSpec((5, 12, 6, 3), activation=activation), 3)
        x = rng.normal(size=(16, 5))
        y = rng.integers(0, 3, size=16)
        params = _torch_parameters(model.parameters())
        _torch_loss(params, x, y, activation).backward()
        for ours, theirs in zip(backward(model, x, y), params, strict=True):
            np.testing.assert_allclose(ours, theirs.grad.numpy(), atol=1e-10)

    @pytest.mark.parametrize(
        ("spec", "make_optimizer"),
        [
            (OptimizerSpec("sgd", learning_rate=0.05, momentum=0.0), lambda p: torch.optim.SGD(p, lr=0.05)),
            (OptimizerSpec("sgd", learning_rate=0.05, momentum=0.9), lambda p: torch.optim.SGD(p, lr=0.05, momentum=0.9)),
            (OptimizerSpec("adam", learning_rate=0.01), lambda p: torch.optim.Adam(p, lr=0.01, betas=(0.9, 0.999), eps=1e-8)),
        ],
    )
    def test_updates_match_torch_optim(self, spec, make_optimizer):
        rng = np.random.default_rng(1)
        model = init_model(ModelSpec((4, 8, 3)), 5)
        params = _torch_parameters(model.parameters())
        optimizer = make_optimizer(params)
        ours = model.parameters()
        state = None
        for _ in range(5):
            grads = [rng.normal(size=p.shape) for p in ours]
            ours, state = optimizer_step(state, ours, grads, spec)
            for param, grad in zip(params, grads, strict=True):
                param.grad = torch.tensor(grad, dtype=torch.float64)
            optimizer.step()
        for a, b in zip(ours, params, strict=True):
            np.testing.assert_allclose(a, b.detach().numpy(), atol=1e-10)
