"""Flat binary container for complex sample matrices.

Layout, all little-endian:

    offset  size  field
    0       4     magic b"SARC"
    4       2     version, u16, currently 1
    6       2     domain tag, u16: 0 raw, 1 wavenumber, 2 range-doppler, 3 image
    8       4     rows, u32
    12      4     cols, u32
    16      8     eta_start, f64        (seconds)
    24      8     eta_step, f64
    32      8     tau_start, f64
    40      8     tau_step, f64
    48      ...   rows*cols samples, row-major, each (re f32, im f32)

Samples are stored at 32-bit precision and widened to complex128 on read, so
write-then-read is bit exact on the stored floats but lossy versus the
in-memory doubles.
"""

from __future__ import annotations

import struct

import numpy as np

from .core import Axis, ComplexMatrix, DOMAIN_TAGS

MAGIC = b"SARC"
VERSION = 1
_HEADER = struct.Struct("<4sHHII4d")

# Guard against nonsense headers asking for absurd allocations.
MAX_SAMPLES = 2**32


class ContainerError(Exception):
    """Base class for malformed container files."""


class BadMagicError(ContainerError):
    pass


class TruncatedPayloadError(ContainerError):
    pass


class DimensionOverflowError(ContainerError):
    pass


def write_matrix(path, m):
    """Serialize a ComplexMatrix to path in the SARC layout."""
    rows, cols = m.rows, m.cols
    if rows * cols > MAX_SAMPLES:
        raise DimensionOverflowError(f"{rows}x{cols} exceeds {MAX_SAMPLES} samples")
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        DOMAIN_TAGS.index(m.domain_tag),
        rows,
        cols,
        m.axis_eta.start,
        m.axis_eta.step,
        m.axis_tau.start,
        m.axis_tau.step,
    )
    interleaved = np.empty((rows, 2 * cols), dtype="<f4")
    interleaved[:, 0::2] = m.data.real
    interleaved[:, 1::2] = m.data.imag
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(interleaved.tobytes())


def read_matrix(path):
    """Read a SARC file back into a ComplexMatrix (complex128 in memory)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise TruncatedPayloadError(f"file shorter than {_HEADER.size}-byte header")
    magic, version, tag, rows, cols, e0, de, t0, dt = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ContainerError(f"unsupported version {version}")
    if tag >= len(DOMAIN_TAGS):
        raise ContainerError(f"unknown domain tag {tag}")
    if rows * cols > MAX_SAMPLES:
        raise DimensionOverflowError(f"{rows}x{cols} exceeds {MAX_SAMPLES} samples")
    need = rows * cols * 8
    payload = blob[_HEADER.size:]
    if len(payload) < need:
        raise TruncatedPayloadError(
            f"payload holds {len(payload)} bytes, header promises {need}"
        )
    flat = np.frombuffer(payload[:need], dtype="<f4").reshape(rows, 2 * cols)
    data = flat[:, 0::2].astype(np.float64) + 1j * flat[:, 1::2].astype(np.float64)
    return ComplexMatrix(
        data=data,
        axis_eta=Axis(e0, de),
        axis_tau=Axis(t0, dt),
        domain_tag=DOMAIN_TAGS[tag],
    )
