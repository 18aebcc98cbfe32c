"""Dense float64 tensors with reverse-mode autodiff on an explicit tape.

A :class:`Tensor` wraps a row-major numpy float64 array. While a
:class:`Tape` is active (used as a context manager), every op that touches a
grad-requiring tensor appends one node -- parents plus a backward closure --
to the tape, in creation order. That order is already topological, so
:func:`backward` simply walks the node list in reverse from the loss,
accumulating gradients. The graph is rebuilt from scratch each training step.

Every op validates that its output is finite and raises
:class:`~trajgraft.errors.NonFiniteError` otherwise; downstream code never
has to re-check for NaN/Inf.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import ContractError, NonFiniteError, ShapeError

ArrayLike = Union["Tensor", np.ndarray, float, int, Sequence]

_ACTIVE_TAPE: Optional["Tape"] = None


class _Node:
    __slots__ = ("out", "parents", "backward")

    def __init__(self, out: "Tensor", parents: tuple, backward: Callable):
        self.out = out
        self.parents = parents
        self.backward = backward


class Tape:
    """Ordered record of ops; parents of every node precede it."""

    def __init__(self):
        self.nodes: list[_Node] = []

    def __enter__(self) -> "Tape":
        global _ACTIVE_TAPE
        self._prev = _ACTIVE_TAPE
        _ACTIVE_TAPE = self
        return self

    def __exit__(self, *exc):
        global _ACTIVE_TAPE
        _ACTIVE_TAPE = self._prev
        return False

    def __len__(self) -> int:
        return len(self.nodes)


class no_grad:
    """Context that suspends tape recording (forward-only evaluation)."""

    def __enter__(self):
        global _ACTIVE_TAPE
        self._prev = _ACTIVE_TAPE
        _ACTIVE_TAPE = None
        return self

    def __exit__(self, *exc):
        global _ACTIVE_TAPE
        _ACTIVE_TAPE = self._prev
        return False


class Tensor:
    """Row-major float64 array with an optional gradient buffer.

    Tensors are immutable after construction except for ``grad``, which
    backward passes accumulate into (and optimizers reset).
    """

    __slots__ = ("data", "requires_grad", "grad", "_tape", "_node")

    def __init__(self, data: ArrayLike, requires_grad: bool = False):
        arr = np.ascontiguousarray(np.asarray(data, dtype=np.float64))
        if not np.all(np.isfinite(arr)):
            raise NonFiniteError("tensor", "constructed from non-finite data")
        self.data = arr
        self.requires_grad = requires_grad
        self.grad: Optional[np.ndarray] = None
        self._tape: Optional[Tape] = None
        self._node: Optional[int] = None

    @property
    def shape(self) -> tuple:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def item(self) -> float:
        if self.data.size != 1:
            raise ShapeError(f"item() on tensor of shape {self.shape}")
        return float(self.data.reshape(()))

    def zero_grad(self):
        self.grad = None

    def detach(self) -> "Tensor":
        return Tensor(self.data.copy())

    def __repr__(self):
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

    # operator sugar; every overload routes through the module-level ops
    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __neg__(self):
        return mul(self, -1.0)

    def __matmul__(self, other):
        return matmul(self, other)


def _coerce(x: ArrayLike) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _check_finite(arr: np.ndarray, op: str):
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(op)


def _make(op: str, data: np.ndarray, parents: tuple, backward: Callable) -> Tensor:
    """Wrap op output, run the finite check, and record on the active tape."""
    _check_finite(data, op)
    out = Tensor(data)
    tape = _ACTIVE_TAPE
    if tape is not None and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._tape = tape
        out._node = len(tape.nodes)
        tape.nodes.append(_Node(out, parents, backward))
    return out


def _unbroadcast(grad: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum grad over the axes numpy broadcast when producing it."""
    if grad.shape == shape:
        return grad
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, n in enumerate(shape):
        if n == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


# ---------------------------------------------------------------------------
# elementwise ops (broadcasting)
# ---------------------------------------------------------------------------


def add(a: ArrayLike, b: ArrayLike) -> Tensor:
    a, b = _coerce(a), _coerce(b)
    data = a.data + b.data

    def bw(g):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return _make("add", data, (a, b), bw)


def sub(a: ArrayLike, b: ArrayLike) -> Tensor:
    a, b = _coerce(a), _coerce(b)
    data = a.data - b.data

    def bw(g):
        return _unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)

    return _make("sub", data, (a, b), bw)


def mul(a: ArrayLike, b: ArrayLike) -> Tensor:
    a, b = _coerce(a), _coerce(b)
    data = a.data * b.data

    def bw(g):
        return _unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)

    return _make("mul", data, (a, b), bw)


def div(a: ArrayLike, b: ArrayLike) -> Tensor:
    a, b = _coerce(a), _coerce(b)
    data = a.data / b.data

    def bw(g):
        ga = _unbroadcast(g / b.data, a.shape)
        gb = _unbroadcast(-g * a.data / (b.data * b.data), b.shape)
        return ga, gb

    return _make("div", data, (a, b), bw)


def exp(a: ArrayLike) -> Tensor:
    a = _coerce(a)
    data = np.exp(a.data)

    def bw(g):
        return (g * data,)

    return _make("exp", data, (a,), bw)


def log(a: ArrayLike) -> Tensor:
    a = _coerce(a)
    data = np.log(a.data)

    def bw(g):
        return (g / a.data,)

    return _make("log", data, (a,), bw)


def sqrt(a: ArrayLike) -> Tensor:
    a = _coerce(a)
    data = np.sqrt(a.data)

    def bw(g):
        return (g * 0.5 / data,)

    return _make("sqrt", data, (a,), bw)


def relu(a: ArrayLike) -> Tensor:
    a = _coerce(a)
    data = np.maximum(a.data, 0.0)

    def bw(g):
        return (g * (a.data > 0.0),)

    return _make("relu", data, (a,), bw)


def maximum_scalar(a: ArrayLike, floor: float) -> Tensor:
    """Elementwise max(a, floor); gradient flows where a >= floor."""
    a = _coerce(a)
    data = np.maximum(a.data, floor)

    def bw(g):
        return (g * (a.data >= floor),)

    return _make("maximum_scalar", data, (a,), bw)


def square(a: ArrayLike) -> Tensor:
    return mul(a, a)


# ---------------------------------------------------------------------------
# reductions and shape ops
# ---------------------------------------------------------------------------


def tensor_sum(a: ArrayLike, axis=None, keepdims: bool = False) -> Tensor:
    a = _coerce(a)
    data = a.data.sum(axis=axis, keepdims=keepdims)

    def bw(g):
        g = np.asarray(g)
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, a.shape).copy(),)

    return _make("sum", data, (a,), bw)


def mean(a: ArrayLike, axis=None, keepdims: bool = False) -> Tensor:
    a = _coerce(a)
    n = a.data.size if axis is None else a.shape[axis]
    return mul(tensor_sum(a, axis=axis, keepdims=keepdims), 1.0 / n)


def reshape(a: ArrayLike, shape) -> Tensor:
    a = _coerce(a)
    data = a.data.reshape(shape)

    def bw(g):
        return (g.reshape(a.shape),)

    return _make("reshape", data, (a,), bw)


def transpose(a: ArrayLike) -> Tensor:
    a = _coerce(a)
    if a.ndim != 2:
        raise ShapeError(f"transpose expects 2-D, got {a.shape}")
    data = np.ascontiguousarray(a.data.T)

    def bw(g):
        return (np.ascontiguousarray(g.T),)

    return _make("transpose", data, (a,), bw)


def concat(tensors: Sequence[ArrayLike], axis: int = 0) -> Tensor:
    ts = [_coerce(t) for t in tensors]
    data = np.concatenate([t.data for t in ts], axis=axis)
    sizes = [t.shape[axis] for t in ts]
    splits = np.cumsum(sizes)[:-1]

    def bw(g):
        return tuple(np.ascontiguousarray(p) for p in np.split(g, splits, axis=axis))

    return _make("concat", data, tuple(ts), bw)


def stack(tensors: Sequence[ArrayLike], axis: int = 0) -> Tensor:
    ts = [reshape(_coerce(t), (1,) + _coerce(t).shape) for t in tensors]
    if axis != 0:
        raise ShapeError("stack supports axis=0 only")
    return concat(ts, axis=0)


def index_axis0(a: ArrayLike, i: int) -> Tensor:
    a = _coerce(a)
    data = a.data[i].copy()

    def bw(g):
        full = np.zeros_like(a.data)
        full[i] = g
        return (full,)

    return _make("index_axis0", data, (a,), bw)


def take_rows(a: ArrayLike, indices) -> Tensor:
    """Row lookup a[indices]; backward scatter-adds into the table."""
    a = _coerce(a)
    idx = np.asarray(indices, dtype=np.intp)
    data = a.data[idx].copy()

    def bw(g):
        full = np.zeros_like(a.data)
        np.add.at(full, idx, g)
        return (full,)

    return _make("take_rows", data, (a,), bw)


def cumsum(a: ArrayLike, axis: int) -> Tensor:
    a = _coerce(a)
    data = np.cumsum(a.data, axis=axis)

    def bw(g):
        return (np.flip(np.cumsum(np.flip(g, axis=axis), axis=axis), axis=axis).copy(),)

    return _make("cumsum", data, (a,), bw)


# ---------------------------------------------------------------------------
# linear algebra and attention building blocks
# ---------------------------------------------------------------------------


def matmul(a: ArrayLike, b: ArrayLike) -> Tensor:
    a, b = _coerce(a), _coerce(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul expects 2-D operands, got {a.shape} @ {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul inner dims differ: {a.shape} @ {b.shape}")
    data = a.data @ b.data

    def bw(g):
        return g @ b.data.T, a.data.T @ g

    return _make("matmul", data, (a, b), bw)


def softmax(a: ArrayLike, axis: int = -1) -> Tensor:
    """Softmax along ``axis``, computed with max-subtraction for stability."""
    a = _coerce(a)
    shifted = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    data = e / e.sum(axis=axis, keepdims=True)

    def bw(g):
        dot = (g * data).sum(axis=axis, keepdims=True)
        return (data * (g - dot),)

    return _make("softmax", data, (a,), bw)


def attention(q: ArrayLike, k: ArrayLike, v: ArrayLike, scale: float) -> Tensor:
    """softmax(q @ k.T * scale) @ v for 2-D q, k, v."""
    q, k, v = _coerce(q), _coerce(k), _coerce(v)
    if q.shape[1] != k.shape[1]:
        raise ShapeError(f"attention feature dims differ: q {q.shape}, k {k.shape}")
    if k.shape[0] != v.shape[0]:
        raise ShapeError(f"attention key/value counts differ: k {k.shape}, v {v.shape}")
    weights = softmax(mul(matmul(q, transpose(k)), scale), axis=-1)
    return matmul(weights, v)


def mlp_forward(x: ArrayLike, layers: Sequence[tuple]) -> Tensor:
    """Affine chain with ReLU between layers and no output activation.

    ``layers`` is a sequence of (W, b) pairs with W of shape (out, in),
    applied as ``h @ W.T + b``.
    """
    h = _coerce(x)
    if h.ndim != 2:
        raise ShapeError(f"mlp_forward expects 2-D input, got {h.shape}")
    for i, (w, b) in enumerate(layers):
        if h.shape[1] != w.shape[1]:
            raise ShapeError(f"mlp layer {i}: input dim {h.shape[1]} != W in-dim {w.shape[1]}")
        h = add(matmul(h, transpose(w)), b)
        if i + 1 < len(layers):
            h = relu(h)
    return h


def bilinear_sample(grid: ArrayLike, points: ArrayLike) -> Tensor:
    """Sample grid[h, w, d] at continuous (x, y) grid coordinates.

    Coordinates clamp to the grid border, so out-of-range points read the
    nearest edge cell. Gradients flow to both the grid values and the point
    coordinates (zero for a clamped coordinate). Accepts a single (2,) point
    or a batch (n, 2); returns (d,) or (n, d) accordingly.
    """
    grid, points = _coerce(grid), _coerce(points)
    if grid.ndim != 3:
        raise ShapeError(f"bilinear_sample expects grid of shape (h, w, d), got {grid.shape}")
    single = points.ndim == 1
    pts = points.data.reshape(-1, 2)
    data = kernels.bilinear_gather(grid.data, pts)

    def bw(g):
        g2 = g.reshape(-1, grid.shape[2])
        ggrid, gpts = kernels.bilinear_scatter(grid.data, pts, g2)
        if single:
            gpts = gpts.reshape(2)
        return ggrid, gpts

    out = _make("bilinear_sample", data.reshape(-1) if single else data, (grid, points), bw)
    return out


# ---------------------------------------------------------------------------
# backward driver
# ---------------------------------------------------------------------------


def backward(loss: Tensor):
    """Accumulate dLoss/dX into .grad of every grad-requiring tensor.

    Repeated calls on an intact tape accumulate (no implicit reset). The
    walk visits each tape node at most once, in reverse creation order, so
    two runs over identical tapes produce bit-identical gradients.
    """
    if not isinstance(loss, Tensor) or loss.data.size != 1:
        raise ContractError("backward expects a scalar Tensor loss")
    if loss._tape is None:
        if loss.requires_grad:
            raise ContractError("loss is not recorded on a tape")
        return
    tape = loss._tape
    flows: dict[int, np.ndarray] = {loss._node: np.ones_like(loss.data)}
    for idx in range(loss._node, -1, -1):
        g = flows.pop(idx, None)
        if g is None:
            continue
        node = tape.nodes[idx]
        out = node.out
        if out.grad is None:
            out.grad = g.copy()
        else:
            out.grad = out.grad + g
        parent_grads = node.backward(g)
        for parent, pg in zip(node.parents, parent_grads):
            if pg is None or not parent.requires_grad:
                continue
            pg = np.asarray(pg, dtype=np.float64)
            if parent._tape is tape and parent._node is not None:
                j = parent._node
                if j in flows:
                    flows[j] = flows[j] + pg
                else:
                    flows[j] = pg
            else:
                if parent.grad is None:
                    parent.grad = pg.copy()
                else:
                    parent.grad = parent.grad + pg
