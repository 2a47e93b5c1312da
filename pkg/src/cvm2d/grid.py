"""Toroidal zigzag lattice of bistate nodes.

Geometry
--------
Rows alternate between two horizontal offsets. Even rows sit half a column to
the right of odd rows, so every node touches two nodes in the row below and two
in the row above along diagonals:

* even ``r``: ``(r, c)`` is diagonally adjacent to ``(r+1, c)`` and ``(r+1, c+1)``
* odd ``r``:  ``(r, c)`` is diagonally adjacent to ``(r+1, c-1)`` and ``(r+1, c)``

All indices wrap, which is why the row count must be even. Diagonal pairs are the
nearest neighbours, same-row pairs the next-nearest neighbours, and a triplet is a
horizontal pair plus the node diagonally adjacent to both of them (one above, one
below).

States are stored as ``uint8`` with ``1`` for A ("on", black) and ``0`` for B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from cvm2d.errors import InputError, PatternError

A = 1
B = 0

Cell = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Lattice:
    """Immutable view of a bistate toroidal grid.

    ``cells`` is a ``(rows, cols)`` uint8 array; it is copied and made read-only
    on construction so a Lattice can be shared freely between workers.
    """

    cells: np.ndarray

    def __post_init__(self):
        arr = np.array(self.cells, dtype=np.uint8, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InputError(f"lattice must be a non-empty 2-D array, got shape {arr.shape}")
        if arr.shape[0] % 2:
            raise InputError(f"row count must be even, got {arr.shape[0]}")
        if np.any(arr > 1):
            raise InputError("lattice states must be 0 (B) or 1 (A)")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    @property
    def size(self) -> int:
        return self.cells.size

    def __getitem__(self, cell: Cell) -> int:
        r, c = cell
        return int(self.cells[r % self.rows, c % self.cols])

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.shape, self.cells.tobytes()))

    def __repr__(self):
        return f"Lattice({self.rows}x{self.cols}, x1={self.count_a()}/{self.size})"

    def count_a(self) -> int:
        return int(self.cells.sum())

    def x1(self) -> float:
        return self.count_a() / self.size

    def is_constant(self) -> bool:
        n = self.count_a()
        return n == 0 or n == self.size

    def translate(self, dr: int, dc: int) -> "Lattice":
        """Cyclic shift. Statistics are only invariant for even ``dr``."""
        return Lattice(np.roll(self.cells, (dr, dc), axis=(0, 1)))


@dataclass(frozen=True)
class PatternSource:
    """A core pattern together with a free-text note of where it came from."""

    core: Lattice
    provenance: str = field(default="")


# ---------------------------------------------------------------------------
# Pattern text I/O
# ---------------------------------------------------------------------------


def parse_pattern(text: str) -> Lattice:
    """Parse lines of ``0``/``1`` characters into a lattice (``1`` = A).

    Blank lines and trailing whitespace are ignored; LF and CRLF both work.
    """
    rows: list[list[int]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line:
            continue
        for col, ch in enumerate(line, start=1):
            if ch not in "01":
                raise PatternError(f"illegal character {ch!r}", lineno, col)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise PatternError(f"ragged row: expected {width} characters, got {len(line)}", lineno)
        rows.append([1 if ch == "1" else 0 for ch in line])
    if not rows:
        raise PatternError("empty pattern")
    if len(rows) % 2:
        raise PatternError(f"odd row count {len(rows)}; zigzag lattices need an even number of rows")
    return Lattice(np.array(rows, dtype=np.uint8))


def serialize_pattern(lat: Lattice) -> str:
    return "".join("".join("1" if v else "0" for v in row) + "\n" for row in lat.cells)


def read_pattern(path) -> Lattice:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_pattern(text)
    except PatternError as exc:
        raise PatternError(f"{path}: {exc}") from None


def write_pattern(lat: Lattice, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_pattern(lat))


# ---------------------------------------------------------------------------
# Mirror envelope
# ---------------------------------------------------------------------------


def _fold(i: int, n: int) -> int:
    half = n // 2
    if i < half:
        return half - 1 - i
    if i < 3 * half:
        return i - half
    return 5 * half - 1 - i


def fold_indices(n: int) -> np.ndarray:
    """Core index for each of the ``2n`` envelope positions along one axis."""
    return np.array([_fold(i, n) for i in range(2 * n)], dtype=np.intp)


def build_envelope(core: Lattice) -> Lattice:
    """Mirror-pad a core pattern to twice its size in both directions.

    The core sits in the centre; a reflected half-width strip is added on each
    side (and then above/below), so that closing the torus joins mirrored edges
    and seam pairs repeat statistics already present in the interior.
    """
    if core.rows % 2 or core.cols % 2:
        raise InputError(f"envelope needs even core dimensions, got {core.rows}x{core.cols}")
    ri = fold_indices(core.rows)
    ci = fold_indices(core.cols)
    return Lattice(core.cells[np.ix_(ri, ci)])


# ---------------------------------------------------------------------------
# Geometry enumeration
# ---------------------------------------------------------------------------


def _down_neighbors(r: int, c: int, rows: int, cols: int) -> tuple[Cell, Cell]:
    r1 = (r + 1) % rows
    if r % 2 == 0:
        return (r1, c % cols), (r1, (c + 1) % cols)
    return (r1, (c - 1) % cols), (r1, c % cols)


def _up_neighbors(r: int, c: int, rows: int, cols: int) -> tuple[Cell, Cell]:
    r0 = (r - 1) % rows
    # row r-1 has the opposite parity; invert the down rule
    if r % 2 == 0:
        return (r0, c % cols), (r0, (c + 1) % cols)
    return (r0, (c - 1) % cols), (r0, c % cols)


def enumerate_nn_pairs(lat: Lattice) -> Iterator[tuple[Cell, Cell]]:
    """Diagonal (nearest-neighbour) pairs, upper node first; 2*rows*cols in total."""
    R, C = lat.shape
    for r in range(R):
        for c in range(C):
            for other in _down_neighbors(r, c, R, C):
                yield (r, c), other


def enumerate_nnn_pairs(lat: Lattice) -> Iterator[tuple[Cell, Cell]]:
    """Same-row (next-nearest-neighbour) pairs, left node first; rows*cols in total."""
    R, C = lat.shape
    for r in range(R):
        for c in range(C):
            yield (r, c), (r, (c + 1) % C)


def _apex(left: Cell, right: Cell, below: bool, rows: int, cols: int) -> Cell:
    look = _down_neighbors if below else _up_neighbors
    a = look(*left, rows, cols)
    b = look(*right, rows, cols)
    # left's second neighbour is always right's first
    assert a[1] == b[0], (left, right, a, b)
    return a[1]


def enumerate_triplets(lat: Lattice) -> Iterator[tuple[Cell, Cell, Cell]]:
    """(left endpoint, apex, right endpoint) triplets; 2*rows*cols in total.

    Every horizontal pair yields one triplet with its apex in the row below and
    one with its apex in the row above.
    """
    R, C = lat.shape
    for left, right in enumerate_nnn_pairs(lat):
        yield left, _apex(left, right, True, R, C), right
        yield left, _apex(left, right, False, R, C), right


@dataclass(frozen=True)
class Geometry:
    """Flat index arrays for vectorized counting on a fixed lattice shape."""

    nn: tuple[np.ndarray, np.ndarray]
    nnn: tuple[np.ndarray, np.ndarray]
    triplets: tuple[np.ndarray, np.ndarray, np.ndarray]


@lru_cache(maxsize=64)
def geometry(rows: int, cols: int) -> Geometry:
    probe = Lattice(np.zeros((rows, cols), dtype=np.uint8))

    def flat(cells):
        return np.array([r * cols + c for r, c in cells], dtype=np.intp)

    nn = list(enumerate_nn_pairs(probe))
    nnn = list(enumerate_nnn_pairs(probe))
    tri = list(enumerate_triplets(probe))
    return Geometry(
        nn=(flat(p[0] for p in nn), flat(p[1] for p in nn)),
        nnn=(flat(p[0] for p in nnn), flat(p[1] for p in nnn)),
        triplets=tuple(flat(t[k] for t in tri) for k in range(3)),
    )


# ---------------------------------------------------------------------------
# Mutation and fixtures
# ---------------------------------------------------------------------------


def swap_states(lat: Lattice, a: Cell, b: Cell) -> Lattice:
    """Return a copy of ``lat`` with the (different) states at ``a`` and ``b`` exchanged."""
    R, C = lat.shape
    a = (a[0] % R, a[1] % C)
    b = (b[0] % R, b[1] % C)
    if lat.cells[a] == lat.cells[b]:
        raise InputError(f"cells {a} and {b} hold the same state; nothing to swap")
    out = lat.cells.copy()
    out[a], out[b] = lat.cells[b], lat.cells[a]
    return Lattice(out)


def random_equiprobable(rows: int, cols: int, seed: int) -> Lattice:
    """Exactly half the cells set to A, placed uniformly by a seeded PCG64 stream."""
    n = rows * cols
    if n % 2:
        raise InputError(f"cell count {rows}x{cols} is odd; cannot split equally")
    rng = np.random.default_rng(seed)
    flat = np.zeros(n, dtype=np.uint8)
    flat[rng.permutation(n)[: n // 2]] = A
    return Lattice(flat.reshape(rows, cols))


def stripe_fixture(rows: int, cols: int) -> Lattice:
    """Alternating all-A / all-B rows, starting with A."""
    cells = np.zeros((rows, cols), dtype=np.uint8)
    cells[0::2] = A
    return Lattice(cells)


def block_fixture(rows: int, cols: int) -> Lattice:
    """One contiguous band of ``rows/2`` all-A rows on top, B below."""
    cells = np.zeros((rows, cols), dtype=np.uint8)
    cells[: rows // 2] = A
    return Lattice(cells)
