"""Named parameter store and seeded initializers."""

from __future__ import annotations

from typing import Dict, Iterator, Mapping, Tuple

import numpy as np

from .errors import ConfigError
from .tensor import Tensor


class ParamStore:
    """Ordered mapping of parameter-path strings to trainable tensors.

    Insertion order is the canonical order for checkpointing and for
    optimizer updates, so it must be deterministic across runs.
    """

    def __init__(self):
        self._params: Dict[str, Tensor] = {}

    def add(self, name: str, array: np.ndarray) -> Tensor:
        if name in self._params:
            raise ConfigError(f"duplicate parameter name {name!r}")
        t = Tensor(array, requires_grad=True)
        self._params[name] = t
        return t

    def __getitem__(self, name: str) -> Tensor:
        return self._params[name]

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __len__(self) -> int:
        return len(self._params)

    def items(self) -> Iterator[Tuple[str, Tensor]]:
        return iter(self._params.items())

    def tensors(self):
        return list(self._params.values())

    def n_scalars(self) -> int:
        return sum(t.size for t in self._params.values())

    def zero_grad(self):
        for t in self._params.values():
            t.grad = None

    def state(self) -> Dict[str, np.ndarray]:
        return {k: v.data.copy() for k, v in self._params.items()}

    def load_state(self, state: Mapping[str, np.ndarray]):
        missing = set(self._params) - set(state)
        extra = set(state) - set(self._params)
        if missing or extra:
            raise ConfigError(
                f"checkpoint does not match model: missing={sorted(missing)[:3]} extra={sorted(extra)[:3]}"
            )
        for name, tensor in self._params.items():
            arr = np.asarray(state[name], dtype=np.float64)
            if arr.shape != tensor.shape:
                raise ConfigError(f"parameter {name!r}: checkpoint shape {arr.shape} != model shape {tensor.shape}")
            tensor.data = np.ascontiguousarray(arr)


class Initializer:
    """Deterministic parameter init from a single seeded generator.

    Construction order of parameters therefore fixes the realized values.
    """

    def __init__(self, seed: int):
        self.rng = np.random.default_rng(np.random.SeedSequence([int(seed), 0x7261666D]))

    def glorot(self, shape: Tuple[int, ...]) -> np.ndarray:
        fan_out, fan_in = shape[0], shape[-1]
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        return self.rng.uniform(-bound, bound, size=shape)

    def normal(self, shape: Tuple[int, ...], std: float = 0.02) -> np.ndarray:
        return self.rng.normal(0.0, std, size=shape)

    def zeros(self, shape: Tuple[int, ...]) -> np.ndarray:
        return np.zeros(shape, dtype=np.float64)
