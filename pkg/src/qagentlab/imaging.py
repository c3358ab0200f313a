"""8-bit grayscale images: PGM I/O, entropy, nibble segmentation."""
from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import ImageError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major 8-bit raster; ``pixels`` has shape ``(height, width)``."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ImageError(f"expected a non-empty 2-D pixel array, got shape {px.shape}")
        if px.dtype != np.uint8:
            if np.any(px < 0) or np.any(px > 255) or np.any(px != np.round(px)):
                raise ImageError("pixel values must be integers in 0..255")
            px = px.astype(np.uint8)
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other):
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)

    @classmethod
    def constant(cls, width: int, height: int, value: int = 128) -> GrayImage:
        return cls(np.full((height, width), value, dtype=np.uint8))

    @classmethod
    def gradient(cls, width: int, height: int) -> GrayImage:
        row = np.linspace(0, 255, width).round().astype(np.uint8)
        return cls(np.tile(row, (height, 1)))

    @classmethod
    def noise(cls, width: int, height: int, rng: np.random.Generator) -> GrayImage:
        return cls(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


def shannon_entropy(img: GrayImage) -> float:
    """Entropy in bits of the 256-bin intensity histogram (0 log 0 = 0)."""
    if img.pixels.size == 0:
        raise ImageError("entropy of an empty image")
    counts = np.bincount(img.pixels.ravel(), minlength=256)
    p = counts[counts > 0] / img.pixels.size
    h = float(-(p * np.log2(p)).sum())
    return min(max(0.0, h), 8.0)


def to_nibbles(img: GrayImage) -> np.ndarray:
    """High nibble then low nibble of each pixel, row-major."""
    px = img.pixels.ravel()
    out = np.empty(2 * px.size, dtype=np.uint8)
    out[0::2] = px >> 4
    out[1::2] = px & 0x0F
    return out


def from_nibbles(nibbles, width: int, height: int) -> GrayImage:
    nib = np.asarray(nibbles, dtype=np.uint8)
    if nib.size != 2 * width * height:
        raise ImageError(f"need {2 * width * height} nibbles for {width}x{height}, got {nib.size}")
    if np.any(nib > 15):
        raise ImageError("nibble values must be in 0..15")
    px = (nib[0::2] << 4) | nib[1::2]
    return GrayImage(px.reshape(height, width))


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header_tokens(data: bytes, count: int):
    pos, tokens = 0, []
    while len(tokens) < count:
        m = _TOKEN.match(data, pos)
        if m is None:
            raise ImageError("truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def parse_pgm(data: bytes) -> GrayImage:
    """Decode P2 (ASCII) or P5 (binary) graymaps with maxval <= 255."""
    (magic, w, h, maxval), pos = _header_tokens(data, 4)
    if magic not in (b"P2", b"P5"):
        raise ImageError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise ImageError("non-numeric PGM header field") from None
    if width <= 0 or height <= 0:
        raise ImageError(f"bad PGM size {width}x{height}")
    if not 0 < maxval <= 255:
        raise ImageError(f"only 8-bit PGM (maxval <= 255) is supported, got {maxval}")
    n = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1:pos + 1 + n]
        if len(raster) != n:
            raise ImageError(f"P5 raster truncated: expected {n} bytes, got {len(raster)}")
        px = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < n:
            raise ImageError(f"P2 raster truncated: expected {n} values, got {len(body)}")
        try:
            px = np.array([int(v) for v in body[:n]], dtype=np.int64)
        except ValueError:
            raise ImageError("non-numeric value in P2 raster") from None
    if px.max(initial=0) > maxval:
        raise ImageError(f"pixel value exceeds maxval {maxval}")
    return GrayImage(px.reshape(height, width))


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def write_pgm(img: GrayImage, path, binary: bool = True):
    """Write ``img`` as P5 (default) or P2 with maxval 255; returns the path."""
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n255\n".encode()
    with open(os.fspath(path), "wb") as fh:
        fh.write(header)
        if binary:
            fh.write(img.pixels.tobytes())
        else:
            for row in img.pixels:
                fh.write((" ".join(str(int(v)) for v in row) + "\n").encode())
    return path
