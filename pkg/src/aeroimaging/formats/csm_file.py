"""Plain-text cross-spectral matrix files.

Layout::

    # csm v1
    # M 16
    # freq 8000.0
    # snapshots 1000
    0 0 <re> <im>
    0 1 <re> <im>
    ...

Entries are 0-based ``i j`` in row-major order with 17 significant digits, so
a read returns exactly the matrix that was written.
"""

from pathlib import Path

import numpy as np

from aeroimaging.array.operators import Csm
from aeroimaging.config.constants import Constants
from aeroimaging.errors import AeroImagingError, FormatError


def _number(value: float) -> str:
    return format(value, ".17g")


def format_csm(csm: Csm) -> str:
    """Render a CSM in the ``csm v1`` text format."""
    m = csm.size
    lines = [
        Constants.CSM_MAGIC,
        f"# M {m}",
        f"# freq {csm.frequency!r}",
        f"# snapshots {csm.snapshots}",
    ]
    for i in range(m):
        for j in range(m):
            z = complex(csm.entries[i, j])
            lines.append(f"{i} {j} {_number(z.real)} {_number(z.imag)}")
    return "\n".join(lines) + "\n"


def write_csm(path: Path, csm: Csm) -> None:
    """Write ``csm`` to ``path``, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_csm(csm), encoding="utf-8")


def _header(lines: list[str], index: int, key: str, path: Path) -> str:
    if index >= len(lines):
        raise FormatError(f"{path}: missing '# {key}' header")
    parts = lines[index].split()
    if len(parts) != 3 or parts[0] != "#" or parts[1] != key:
        raise FormatError(f"{path}:{index + 1}: expected '# {key} <value>', got {lines[index]!r}")
    return parts[2]


def parse_csm(text: str, path: Path) -> Csm:
    """Parse ``csm v1`` text; ``path`` is only used in error messages.

    Raises:
        FormatError: On a bad header, malformed or duplicate entries, missing
            entries, or a matrix that is not Hermitian positive semi-definite.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != Constants.CSM_MAGIC:
        raise FormatError(f"{path}: not a CSM file (expected {Constants.CSM_MAGIC!r})")
    try:
        m = int(_header(lines, 1, "M", path))
        frequency = float(_header(lines, 2, "freq", path))
        snapshots = int(_header(lines, 3, "snapshots", path))
    except ValueError as e:
        raise FormatError(f"{path}: invalid header value: {e}") from e
    if m < 1 or snapshots < 0:
        raise FormatError(f"{path}: invalid header (M={m}, snapshots={snapshots})")

    entries = np.zeros((m, m), dtype=np.complex128)
    seen = np.zeros((m, m), dtype=bool)
    for number, line in enumerate(lines[4:], start=5):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4:
            raise FormatError(f"{path}:{number}: expected 'i j re im', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            value = complex(float(parts[2]), float(parts[3]))
        except ValueError as e:
            raise FormatError(f"{path}:{number}: {e}") from e
        if not (0 <= i < m and 0 <= j < m):
            raise FormatError(f"{path}:{number}: index ({i}, {j}) outside a {m}x{m} matrix")
        if seen[i, j]:
            raise FormatError(f"{path}:{number}: duplicate entry ({i}, {j})")
        entries[i, j] = value
        seen[i, j] = True

    missing = int(np.count_nonzero(~seen))
    if missing:
        raise FormatError(f"{path}: {missing} of {m * m} entries missing")
    try:
        return Csm(entries, frequency, snapshots)
    except AeroImagingError as e:
        raise FormatError(f"{path}: {e}") from e


def read_csm(path: Path) -> Csm:
    """Read a CSM file.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        FormatError: If the contents cannot be parsed.
    """
    return parse_csm(path.read_text(encoding="utf-8"), path)
