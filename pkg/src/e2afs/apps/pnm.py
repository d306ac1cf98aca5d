"""Binary PGM (P5) and PPM (P6) reading and writing, maxval 255 only.

Images are numpy ``uint8`` arrays: ``(height, width)`` for gray,
``(height, width, 3)`` for RGB.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

_WHITESPACE = b" \t\n\r\v\f"


class PnmError(ValueError):
    pass


def _read_header(data: bytes) -> tuple[list[bytes], int]:
    """Return (magic, width, height, maxval) tokens and the body offset."""
    tokens: list[bytes] = []
    i = 0
    n = len(data)
    while len(tokens) < 4:
        while i < n and data[i] in _WHITESPACE:
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] not in b"\r\n":
                i += 1
            continue
        if i >= n:
            raise PnmError("truncated header")
        start = i
        while i < n and data[i] not in _WHITESPACE and data[i] != ord("#"):
            i += 1
        tokens.append(data[start:i])
    # exactly one whitespace byte separates maxval from the raster
    if i >= n or data[i] not in _WHITESPACE:
        raise PnmError("missing whitespace after maxval")
    return tokens, i + 1


def parse_pnm(data: bytes) -> np.ndarray:
    tokens, offset = _read_header(data)
    magic = tokens[0]
    if magic not in (b"P5", b"P6"):
        raise PnmError(f"unsupported magic {magic!r}; expected P5 or P6")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise PnmError(f"malformed header fields {tokens[1:]!r}") from None
    if width <= 0 or height <= 0:
        raise PnmError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise PnmError(f"unsupported maxval {maxval}")
    channels = 1 if magic == b"P5" else 3
    size = width * height * channels
    body = data[offset : offset + size]
    if len(body) < size:
        raise PnmError(f"truncated body: expected {size} bytes, got {len(body)}")
    img = np.frombuffer(body, dtype=np.uint8).reshape(height, width, channels)
    return img[:, :, 0].copy() if channels == 1 else img.copy()


def load_pnm(path) -> np.ndarray:
    return parse_pnm(Path(path).read_bytes())


def format_pnm(img: np.ndarray) -> bytes:
    img = np.asarray(img)
    if img.dtype != np.uint8:
        raise PnmError(f"expected uint8 pixels, got {img.dtype}")
    if img.ndim == 2:
        magic = b"P5"
    elif img.ndim == 3 and img.shape[2] == 3:
        magic = b"P6"
    else:
        raise PnmError(f"cannot save array of shape {img.shape}")
    h, w = img.shape[:2]
    return magic + b"\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img).tobytes()


def save_pnm(img: np.ndarray, path) -> Path:
    path = Path(path)
    path.write_bytes(format_pnm(img))
    return path
