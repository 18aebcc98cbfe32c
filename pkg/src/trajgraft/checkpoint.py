"""Binary parameter checkpoints.

Single file layout (all integers little-endian):

    magic   8 bytes  b"TGRAFTCK"
    version u32      currently 1
    count   u64      number of entries
    entry   u32 path length, utf-8 path, u32 ndim, u32*ndim dims,
            float64 little-endian payload (row-major)

Round-trips are bit-exact; entry order is preserved.
"""

from __future__ import annotations

import struct
from typing import Dict, Mapping, Union

import numpy as np

from .errors import ContractError
from .tensor import Tensor

MAGIC = b"TGRAFTCK"
VERSION = 1


def save_checkpoint(path: str, params: Mapping[str, Union[Tensor, np.ndarray]]) -> None:
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<I", VERSION))
        f.write(struct.pack("<Q", len(params)))
        for name, value in params.items():
            arr = value.data if isinstance(value, Tensor) else np.asarray(value, dtype=np.float64)
            encoded = name.encode("utf-8")
            f.write(struct.pack("<I", len(encoded)))
            f.write(encoded)
            f.write(struct.pack("<I", arr.ndim))
            for dim in arr.shape:
                f.write(struct.pack("<I", dim))
            f.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_checkpoint(path: str) -> Dict[str, np.ndarray]:
    with open(path, "rb") as f:
        blob = f.read()
    if blob[: len(MAGIC)] != MAGIC:
        raise ContractError(f"{path}: not a trajgraft checkpoint")
    off = len(MAGIC)
    (version,) = struct.unpack_from("<I", blob, off)
    off += 4
    if version != VERSION:
        raise ContractError(f"{path}: unsupported checkpoint version {version}")
    (count,) = struct.unpack_from("<Q", blob, off)
    off += 8
    out: Dict[str, np.ndarray] = {}
    for _ in range(count):
        (name_len,) = struct.unpack_from("<I", blob, off)
        off += 4
        name = blob[off : off + name_len].decode("utf-8")
        off += name_len
        (ndim,) = struct.unpack_from("<I", blob, off)
        off += 4
        shape = struct.unpack_from(f"<{ndim}I", blob, off) if ndim else ()
        off += 4 * ndim
        n = int(np.prod(shape, dtype=np.int64)) if ndim else 1
        arr = np.frombuffer(blob, dtype="<f8", count=n, offset=off).reshape(shape)
        off += 8 * n
        out[name] = np.ascontiguousarray(arr, dtype=np.float64)
    if off != len(blob):
        raise ContractError(f"{path}: trailing bytes after last entry")
    return out
