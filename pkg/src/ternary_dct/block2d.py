"""Separable 4x4 block transform, quantization folding, and a PGM demo.

The 2-D forward transform of a block b is C b C^T with C one of the
ternary matrices, computed by running the 1-D kernel along both axes,
so the whole 2-D transform is integer additions.  The scale factors
left out of the integer stage live in a 4x4 fold matrix, the outer
product of the row-scaling diagonal with itself.  The inverse applies
the fold twice (once for each omitted diagonal) and multiplies by the
transposed scaled matrices, so forward then inverse is the identity up
to float rounding.

The coding demo works on 8-bit grayscale images: split into 4x4 blocks
(edge-replicated to a multiple of four), transform, keep the first n
coefficients in zig-zag order, reconstruct, round, clamp, and report
PSNR against the original.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dctcore import TransformKind, orthogonalize, ternary_matrix
from .kernels import dct2_kernel, dct4_kernel

BLOCK = 4
PIXEL_MAX = 255
# PSNR reported for a bit-exact reconstruction; finite values are
# clamped here so the sentinel stays the maximum.
LOSSLESS_PSNR_DB = 100.0

# Anti-diagonal scan order used to rank 4x4 coefficients from low to
# high frequency.
ZIGZAG_4X4: tuple[tuple[int, int], ...] = (
    (0, 0), (0, 1), (1, 0), (2, 0),
    (1, 1), (0, 2), (0, 3), (1, 2),
    (2, 1), (3, 0), (3, 1), (2, 2),
    (1, 3), (2, 3), (3, 2), (3, 3),
)


@dataclass(eq=False)
class BlockImage:
    """8-bit grayscale image, samples shaped (height, width)."""

    width: int
    height: int
    samples: np.ndarray

    def __post_init__(self):
        if self.width < BLOCK or self.height < BLOCK:
            raise ValueError(f"image must be at least {BLOCK}x{BLOCK}, got {self.width}x{self.height}")
        arr = np.asarray(self.samples)
        if arr.shape != (self.height, self.width):
            raise ValueError(f"samples shape {arr.shape} does not match {self.height}x{self.width}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("samples must be integers")
        if arr.size and (arr.min() < 0 or arr.max() > PIXEL_MAX):
            raise ValueError(f"samples must lie in [0, {PIXEL_MAX}]")
        self.samples = arr.astype(np.uint8)

    @classmethod
    def from_array(cls, arr) -> "BlockImage":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(width=arr.shape[1], height=arr.shape[0], samples=arr)


def random_image(width: int, height: int, seed: int = 0) -> BlockImage:
    """Seeded uniform-noise image, handy for demos and benchmarks."""
    rng = np.random.default_rng(seed)
    samples = rng.integers(0, PIXEL_MAX + 1, size=(height, width), dtype=np.uint8)
    return BlockImage(width=width, height=height, samples=samples)


def _kernel_for(kind: TransformKind):
    return dct2_kernel if TransformKind(kind) is TransformKind.DCT2 else dct4_kernel


def quant_fold(kind: TransformKind | str) -> np.ndarray:
    """4x4 scale matrix folded into quantization: outer(d, d) for the
    row-scaling diagonal d of the ternary matrix."""
    d, _ = orthogonalize(ternary_matrix(kind))
    return np.outer(d, d)


def forward_2d(block, kind: TransformKind | str) -> np.ndarray:
    """Integer 2-D transform C b C^T of one or more 4x4 blocks.

    block may carry leading batch axes; the last two axes must be 4x4
    and integer.  All arithmetic is kernel additions.
    """
    kernel = _kernel_for(TransformKind(kind))
    arr = np.asarray(block)
    if arr.shape[-2:] != (BLOCK, BLOCK):
        raise ValueError(f"expected trailing 4x4 axes, got shape {arr.shape}")
    cols = kernel(np.swapaxes(arr, -1, -2))
    return kernel(np.swapaxes(cols, -1, -2))


def inverse_2d(coeffs, kind: TransformKind | str, fold=None) -> np.ndarray:
    """Invert forward_2d: scale coefficients by fold squared and apply
    the transposed transform along both axes.

    fold defaults to quant_fold(kind).  Output is float; callers that
    want pixels should round and clamp.
    """
    if fold is None:
        fold = quant_fold(kind)
    fold = np.asarray(fold, dtype=np.float64)
    if fold.shape != (BLOCK, BLOCK) or not np.isfinite(fold).all():
        raise ValueError("fold must be a finite 4x4 matrix")
    arr = np.asarray(coeffs, dtype=np.float64)
    if arr.shape[-2:] != (BLOCK, BLOCK):
        raise ValueError(f"expected trailing 4x4 axes, got shape {arr.shape}")
    c = ternary_matrix(kind).astype(np.float64)
    scaled = fold * fold * arr
    return np.swapaxes(c.T @ np.swapaxes(c.T @ scaled, -1, -2), -1, -2)


def retained_mask(retained: int) -> np.ndarray:
    """Boolean 4x4 mask keeping the first `retained` zig-zag positions."""
    if not isinstance(retained, int) or not 1 <= retained <= BLOCK * BLOCK:
        raise ValueError(f"retained must be an integer in [1, {BLOCK * BLOCK}], got {retained!r}")
    mask = np.zeros((BLOCK, BLOCK), dtype=bool)
    for r, c in ZIGZAG_4X4[:retained]:
        mask[r, c] = True
    return mask


def round_half_away_from_zero(x) -> np.ndarray:
    """Round to nearest integer with ties going away from zero."""
    arr = np.asarray(x, dtype=np.float64)
    return np.trunc(arr + np.copysign(0.5, arr)).astype(np.int64)


def psnr(reference, reconstructed) -> float:
    """PSNR in dB between two 8-bit images; LOSSLESS_PSNR_DB when equal."""
    ref = np.asarray(reference, dtype=np.float64)
    rec = np.asarray(reconstructed, dtype=np.float64)
    if ref.shape != rec.shape:
        raise ValueError(f"shape mismatch: {ref.shape} vs {rec.shape}")
    mse = float(np.mean((ref - rec) ** 2))
    if mse == 0.0:
        return LOSSLESS_PSNR_DB
    return min(10.0 * np.log10(PIXEL_MAX * PIXEL_MAX / mse), LOSSLESS_PSNR_DB)


def _pad_to_block(samples: np.ndarray) -> np.ndarray:
    """Replicate the bottom row / right column up to a multiple of 4."""
    h, w = samples.shape
    pad_h = (-h) % BLOCK
    pad_w = (-w) % BLOCK
    if pad_h == 0 and pad_w == 0:
        return samples
    return np.pad(samples, ((0, pad_h), (0, pad_w)), mode="edge")


def _to_blocks(padded: np.ndarray) -> np.ndarray:
    h, w = padded.shape
    return padded.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK).swapaxes(1, 2)


def _from_blocks(blocks: np.ndarray) -> np.ndarray:
    nbh, nbw = blocks.shape[:2]
    return blocks.swapaxes(1, 2).reshape(nbh * BLOCK, nbw * BLOCK)


def compress_demo(image: BlockImage, kind: TransformKind | str, retained: int) -> tuple[BlockImage, float]:
    """Transform-code an image keeping `retained` coefficients per block.

    Returns the reconstructed image and its PSNR against the input.
    retained = 16 keeps everything and reconstructs bit-exactly.
    """
    if not isinstance(image, BlockImage):
        raise ValueError("image must be a BlockImage")
    kind = TransformKind(kind)
    keep = retained_mask(retained)
    fold = quant_fold(kind)
    padded = _pad_to_block(image.samples.astype(np.int64))
    blocks = _to_blocks(padded)
    coeffs = forward_2d(blocks, kind)
    coeffs = np.where(keep, coeffs, 0)
    rec = inverse_2d(coeffs, kind, fold)
    pixels = np.clip(round_half_away_from_zero(rec), 0, PIXEL_MAX)
    out = _from_blocks(pixels)[: image.height, : image.width].astype(np.uint8)
    result = BlockImage(width=image.width, height=image.height, samples=out)
    return result, psnr(image.samples, result.samples)


def read_pgm(data: bytes) -> BlockImage:
    """Parse a binary (P5) PGM with maxval 255.

    Header tokens may be separated by any whitespace and '#' comments.
    Raises ValueError on anything malformed.
    """
    if not isinstance(data, (bytes, bytearray)):
        raise ValueError("PGM data must be bytes")
    pos = 0

    def next_token() -> bytes:
        nonlocal pos
        while pos < len(data):
            ch = data[pos : pos + 1]
            if ch == b"#":
                while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            elif ch.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ValueError("truncated PGM header")
        return data[start:pos]

    if next_token() != b"P5":
        raise ValueError("not a binary PGM (missing P5 magic)")
    try:
        width = int(next_token())
        height = int(next_token())
        maxval = int(next_token())
    except ValueError as exc:
        raise ValueError(f"malformed PGM header: {exc}") from exc
    if width < 1 or height < 1:
        raise ValueError(f"bad PGM dimensions {width}x{height}")
    if maxval != PIXEL_MAX:
        raise ValueError(f"only maxval {PIXEL_MAX} is supported, got {maxval}")
    pos += 1  # single whitespace byte after maxval
    raster = data[pos : pos + width * height]
    if len(raster) != width * height:
        raise ValueError("PGM raster is truncated")
    samples = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return BlockImage(width=width, height=height, samples=samples)


def write_pgm(image: BlockImage) -> bytes:
    """Serialize a BlockImage as binary (P5) PGM."""
    if not isinstance(image, BlockImage):
        raise ValueError("image must be a BlockImage")
    header = f"P5\n{image.width} {image.height}\n{PIXEL_MAX}\n".encode("ascii")
    return header + image.samples.tobytes()


def load_pgm(path) -> BlockImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(image: BlockImage, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(image))
