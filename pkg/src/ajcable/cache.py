"""On-disk cache of colored Jones values, and the sequence file format.

A sequence file is a list of blocks::

    @ <knot-id> <index>
    [e_t, e_M, e_L, num, den]
    ...

one block per value, records in the polynomial term format.  A cache entry
is a file holding a single block, named by the SHA-256 of
(diagram text, color, evaluator, evaluator version).  Writes go through a
temporary file and an atomic rename, so readers never see partial entries.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from .poly import MultiLaurent

CACHE_ENV = "AJCABLE_CACHE_DIR"
EVALUATOR_VERSION = "1"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ajcable"


def format_block(knot_id: str, index: int, value: MultiLaurent) -> str:
    if any(c.isspace() for c in knot_id):
        raise ValueError("knot id must not contain whitespace")
    return f"@ {knot_id} {index}\n" + value.to_text()


def parse_blocks(text: str) -> list[tuple[str, int, MultiLaurent]]:
    out = []
    head = None
    body: list[str] = []

    def flush():
        if head is not None:
            out.append((head[0], head[1], MultiLaurent.from_text("\n".join(body))))

    for line in text.splitlines():
        s = line.strip()
        if s.startswith("@"):
            flush()
            parts = s[1:].split()
            if len(parts) != 2:
                raise ValueError(f"malformed block header: {line!r}")
            head = (parts[0], int(parts[1]))
            body = []
        elif s and not s.startswith("#"):
            if head is None:
                raise ValueError("record before the first block header")
            body.append(s)
    flush()
    return out


def write_sequence_file(path, knot_id: str, values) -> None:
    text = "".join(format_block(knot_id, n, v) for n, v in values)
    Path(path).write_text(text)


def read_sequence_file(path) -> tuple[str | None, list[tuple[int, MultiLaurent]]]:
    blocks = parse_blocks(Path(path).read_text())
    ids = {b[0] for b in blocks}
    if len(ids) > 1:
        raise ValueError(f"sequence file mixes knots: {sorted(ids)}")
    values = [(n, v) for _, n, v in blocks]
    if len({n for n, _ in values}) != len(values):
        raise ValueError("repeated index in sequence file")
    return (ids.pop() if ids else None), sorted(values, key=lambda x: x[0])


class JonesCache:
    """Content-addressed store of colored Jones values."""

    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_cache_dir()

    @staticmethod
    def key(diagram_text: str, color: int, evaluator: str) -> str:
        h = hashlib.sha256()
        for part in (diagram_text, str(color), evaluator, EVALUATOR_VERSION):
            h.update(part.encode())
            h.update(b"\0")
        return h.hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.txt"

    def get(self, key: str) -> MultiLaurent | None:
        path = self._path(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        blocks = parse_blocks(text)
        if len(blocks) != 1:
            return None
        return blocks[0][2]

    def put(self, key: str, knot_id: str, color: int, value: MultiLaurent) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(format_block(knot_id, color, value))
        os.replace(tmp, path)

    def colored_jones(self, m: int, n: int, method: str = "cyclotomic") -> MultiLaurent:
        """J_{K_m}(n), computed once per (diagram, color, evaluator)."""
        from .jones.colored import colored_jones
        from .jones.diagram import twist_knot_diagram

        diagram = twist_knot_diagram(m).to_text() if m else "O"
        key = self.key(diagram, n, method)
        value = self.get(key)
        if value is None:
            value = colored_jones(m, n, method)
            self.put(key, knot_id(m), n, value)
        return value


def knot_id(m: int) -> str:
    return f"K_{m}" if m else "U"
