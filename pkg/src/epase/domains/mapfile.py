"""Reader/writer for the octile grid-map text format.

::

    type octile
    height H
    width W
    map
    <H rows of W characters>

``.`` is free; ``@`` and ``T`` are blocked.
"""
from __future__ import annotations

import os
from typing import Union

import numpy as np

BLOCKED = frozenset("@T")
FREE = frozenset(".")

PathLike = Union[str, "os.PathLike[str]"]


class MapFormatError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_map(text: str) -> np.ndarray:
    lines = text.splitlines()

    def header(i: int, name: str) -> str:
        if i >= len(lines):
            raise MapFormatError(i + 1, f"missing '{name}' header")
        parts = lines[i].split()
        if not parts or parts[0] != name:
            raise MapFormatError(i + 1, f"expected '{name}' header, got {lines[i]!r}")
        return " ".join(parts[1:])

    header(0, "type")
    try:
        height = int(header(1, "height"))
    except ValueError:
        raise MapFormatError(2, "height is not an integer") from None
    try:
        width = int(header(2, "width"))
    except ValueError:
        raise MapFormatError(3, "width is not an integer") from None
    if height <= 0 or width <= 0:
        raise MapFormatError(2, f"non-positive dimensions {height}x{width}")
    if header(3, "map") != "":
        raise MapFormatError(4, "trailing text after 'map'")

    body = lines[4:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != height:
        raise MapFormatError(5 + min(len(body), height), f"expected {height} rows, found {len(body)}")
    occ = np.zeros((height, width), dtype=bool)
    for r, row in enumerate(body):
        lineno = 5 + r
        row = row.rstrip("\r")
        if len(row) != width:
            raise MapFormatError(lineno, f"row has {len(row)} cells, expected {width}")
        for c, ch in enumerate(row):
            if ch in BLOCKED:
                occ[r, c] = True
            elif ch not in FREE:
                raise MapFormatError(lineno, f"unknown cell character {ch!r} at column {c}")
    return occ


def load_map(path: PathLike) -> np.ndarray:
    """Occupancy bitmap ``(height, width)``; True marks a blocked cell."""
    with open(path) as fh:
        return parse_map(fh.read())


def format_map(occupancy: np.ndarray) -> str:
    occ = np.asarray(occupancy, dtype=bool)
    h, w = occ.shape
    rows = ["".join("@" if v else "." for v in row) for row in occ]
    return "\n".join(["type octile", f"height {h}", f"width {w}", "map", *rows]) + "\n"


def save_map(occupancy: np.ndarray, path: PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_map(occupancy))
