"""Deterministic text serialization of trained graphs.

Format version 1 (UTF-8, line-oriented, tab-separated node/arc fields):

    PGMHD 1
    levels <m> t <t> nodes <n> arcs <a>
    N\t<level>\t<label>
    E\t<parent level>\t<parent label>\t<child label>\t<freq>
    CRC <hex>

Nodes and arcs are written in canonical order (level, then labels), so
identical graphs always serialize to identical bytes.  Labels are percent-
escaped for %, tab, CR and LF so the format stays line-oriented.
"""

from __future__ import annotations

import zlib
from pathlib import Path
from typing import IO, Union

from .errors import CorruptModelError, FormatError
from .graph import LeveledGraph, Node

MAGIC = "PGMHD"
VERSION = 1

_ESCAPES = [("%", "%25"), ("\t", "%09"), ("\n", "%0A"), ("\r", "%0D")]


def escape_label(label: str) -> str:
    for char, code in _ESCAPES:
        label = label.replace(char, code)
    return label


def unescape_label(text: str) -> str:
    for char, code in reversed(_ESCAPES):
        text = text.replace(code, char)
    return text


def dumps(g: LeveledGraph) -> bytes:
    """Canonical serialization; a pure function of graph state."""
    lines = [
        f"{MAGIC} {VERSION}",
        f"levels {g.m} t {g.t} nodes {g.num_nodes} arcs {g.num_arcs}",
    ]
    for node in g.nodes():
        lines.append(f"N\t{node.level}\t{escape_label(node.label)}")
    for parent, child, freq in g.arcs():
        lines.append(
            f"E\t{parent.level}\t{escape_label(parent.label)}"
            f"\t{escape_label(child.label)}\t{freq}"
        )
    body = ("\n".join(lines) + "\n").encode("utf-8")
    crc = zlib.crc32(body)
    return body + f"CRC {crc:08x}\n".encode("ascii")


def loads(data: bytes) -> LeveledGraph:
    """Parse a serialized graph; verifies structure and checksum."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorruptModelError(f"not valid UTF-8: {exc}") from exc
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise CorruptModelError("truncated: missing header or checksum")
    crc_line = lines[-1]
    if not crc_line.startswith("CRC "):
        raise CorruptModelError("truncated: missing CRC line")
    body = "\n".join(lines[:-1]) + "\n"
    crc_field = crc_line[4:]
    # canonical form is exactly 8 lowercase hex digits; anything else is damage
    if len(crc_field) != 8 or not all(c in "0123456789abcdef" for c in crc_field):
        raise CorruptModelError(f"bad CRC field {crc_field!r}")
    expected = int(crc_field, 16)
    actual = zlib.crc32(body.encode("utf-8"))
    if actual != expected:
        raise CorruptModelError(
            f"checksum mismatch: file says {expected:08x}, content is {actual:08x}"
        )

    header = lines[0].split()
    if len(header) != 2 or header[0] != MAGIC:
        raise FormatError(f"bad magic line {lines[0]!r}")
    if header[1] != str(VERSION):
        raise FormatError(f"unsupported version {header[1]!r}")
    counts = lines[1].split()
    if len(counts) != 8 or counts[::2] != ["levels", "t", "nodes", "arcs"]:
        raise FormatError(f"bad counts line {lines[1]!r}")
    try:
        m, t, n_nodes, n_arcs = (int(counts[i]) for i in (1, 3, 5, 7))
    except ValueError:
        raise FormatError(f"non-integer counts in {lines[1]!r}") from None

    g = LeveledGraph(m)
    seen_nodes = 0
    seen_arcs = 0
    for lineno, line in enumerate(lines[2:-1], start=3):
        fields = line.split("\t")
        try:
            if fields[0] == "N":
                if len(fields) != 3:
                    raise FormatError("node line needs 3 fields", lineno)
                g.ensure_node(unescape_label(fields[2]), int(fields[1]))
                seen_nodes += 1
                continue
        except ValueError:
            raise FormatError(f"bad node line {line!r}", lineno) from None
        if fields[0] == "E":
            if len(fields) != 5:
                raise FormatError("arc line needs 5 fields", lineno)
            try:
                level = int(fields[1])
                freq = int(fields[4])
            except ValueError:
                raise FormatError(f"bad arc line {line!r}", lineno) from None
            parent_label = unescape_label(fields[2])
            child_label = unescape_label(fields[3])
            if freq < 1:
                raise FormatError(f"arc frequency must be >= 1, got {freq}", lineno)
            if not g.has_node(parent_label, level):
                raise FormatError(f"arc references undeclared node {parent_label!r}", lineno)
            if not g.has_node(child_label, level + 1):
                raise FormatError(f"arc references undeclared node {child_label!r}", lineno)
            g.add_arc_increment(
                Node(parent_label, level), Node(child_label, level + 1), freq
            )
            seen_arcs += 1
        else:
            raise FormatError(f"unknown record type {fields[0]!r}", lineno)
    if seen_nodes != n_nodes:
        raise FormatError(f"header declares {n_nodes} nodes, file has {seen_nodes}")
    if seen_arcs != n_arcs:
        raise FormatError(f"header declares {n_arcs} arcs, file has {seen_arcs}")
    g.t = t
    return g


def save(g: LeveledGraph, sink: Union[str, Path, IO[bytes]]) -> int:
    """Write the canonical serialization; returns the byte count."""
    data = dumps(g)
    if isinstance(sink, (str, Path)):
        Path(sink).write_bytes(data)
    else:
        sink.write(data)
    return len(data)


def load(source: Union[str, Path, IO[bytes]]) -> LeveledGraph:
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
    return loads(data)
