"""Versioned binary checkpoint container.

Layout (all little-endian):

    magic "PCCK" | u32 version | u32 config_len | config JSON (canonical)
    u32 n_params | per param: u16 name_len, name, u8 kind,
    u32 stride, u32 padding, tensor(weights), tensor(bias)

where tensor = u8 ndim | u32 * ndim shape | raw float64 data. The JSON is
dumped with sorted keys so identical models produce identical bytes, and
float64 payloads round-trip bit-exactly.
"""

from __future__ import annotations

import io
import json
import struct
from pathlib import Path

import numpy as np

from ..errors import CheckpointError
from .params import LayerKind, LayerParams

MAGIC = b"PCCK"
VERSION = 1

_KIND_CODE = {LayerKind.CONV: 0, LayerKind.DENSE: 1}
_CODE_KIND = {v: k for k, v in _KIND_CODE.items()}


def _write_tensor(buf: io.BytesIO, arr: np.ndarray):
    arr = np.ascontiguousarray(arr, dtype="<f8")
    buf.write(struct.pack("<B", arr.ndim))
    buf.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
    buf.write(arr.tobytes())


def _read_tensor(buf: io.BytesIO) -> np.ndarray:
    (ndim,) = struct.unpack("<B", _take(buf, 1))
    shape = struct.unpack(f"<{ndim}I", _take(buf, 4 * ndim))
    count = int(np.prod(shape)) if ndim else 1
    data = np.frombuffer(_take(buf, 8 * count), dtype="<f8")
    return data.reshape(shape).astype(np.float64)


def _take(buf: io.BytesIO, n: int) -> bytes:
    data = buf.read(n)
    if len(data) != n:
        raise CheckpointError("truncated checkpoint")
    return data


def encode_checkpoint(config: dict, params: dict[str, LayerParams]) -> bytes:
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack("<I", VERSION))
    config_json = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    buf.write(struct.pack("<I", len(config_json)))
    buf.write(config_json)
    buf.write(struct.pack("<I", len(params)))
    for name, p in params.items():
        encoded = name.encode()
        buf.write(struct.pack("<H", len(encoded)))
        buf.write(encoded)
        buf.write(struct.pack("<B", _KIND_CODE[p.kind]))
        buf.write(struct.pack("<II", p.stride, p.padding))
        _write_tensor(buf, p.weights)
        _write_tensor(buf, p.bias)
    return buf.getvalue()


def decode_checkpoint(data: bytes):
    """Returns (config_dict, ordered params dict)."""
    buf = io.BytesIO(data)
    if _take(buf, 4) != MAGIC:
        raise CheckpointError("not a checkpoint file (bad magic)")
    (version,) = struct.unpack("<I", _take(buf, 4))
    if version != VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")
    (config_len,) = struct.unpack("<I", _take(buf, 4))
    try:
        config = json.loads(_take(buf, config_len).decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"bad checkpoint config block: {exc}") from exc
    (n_params,) = struct.unpack("<I", _take(buf, 4))
    params: dict[str, LayerParams] = {}
    for _ in range(n_params):
        (name_len,) = struct.unpack("<H", _take(buf, 2))
        name = _take(buf, name_len).decode()
        (kind_code,) = struct.unpack("<B", _take(buf, 1))
        if kind_code not in _CODE_KIND:
            raise CheckpointError(f"unknown layer kind code {kind_code}")
        stride, padding = struct.unpack("<II", _take(buf, 8))
        weights = _read_tensor(buf)
        bias = _read_tensor(buf)
        params[name] = LayerParams(_CODE_KIND[kind_code], weights, bias, stride, padding)
    return config, params


def save_checkpoint(path: str | Path, config: dict, params: dict[str, LayerParams]):
    Path(path).write_bytes(encode_checkpoint(config, params))


def load_checkpoint(path: str | Path):
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    return decode_checkpoint(data)
