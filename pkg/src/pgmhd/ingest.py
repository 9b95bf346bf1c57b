"""Input parsing: hierarchical path files and classified search logs.

Both formats are line-oriented UTF-8.  Paths files carry a ``levels <m>``
header and one tab-separated label per level; search logs carry
``user_id TAB classification TAB term|term|...`` triples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import FormatError

_SPACE_RUN = re.compile(r"\s+")


def normalize_label(raw: str, case_fold: bool = False) -> str:
    """Trim, collapse internal whitespace runs, optionally case-fold."""
    label = _SPACE_RUN.sub(" ", raw.strip())
    return label.casefold() if case_fold else label


@dataclass(frozen=True)
class Observation:
    """One observed path through the levels, always rooted at level 0.

    Paths may be shorter than the graph's level count (prefix paths), but
    never shorter than two labels.
    """

    path: tuple[tuple[int, str], ...]

    def __post_init__(self):
        if len(self.path) < 2:
            raise ValueError("observation needs at least 2 labels")
        for i, (level, label) in enumerate(self.path):
            if level != i:
                raise ValueError(f"levels must run 0,1,... got {level} at index {i}")
            if not label:
                raise ValueError(f"empty label at level {level}")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "Observation":
        return cls(tuple(enumerate(labels)))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for _, label in self.path)


@dataclass(frozen=True)
class SearchLogRow:
    """One classified search-log line; terms are de-duplicated within the row."""

    user_id: str
    classification: str
    terms: tuple[str, ...]


@dataclass
class ParseStats:
    """Mutable tally for rows a lenient parser skipped."""

    skipped: int = 0
    messages: list[str] = field(default_factory=list)


def parse_paths(
    lines: Iterable[str], case_fold: bool = False
) -> Iterator[Observation]:
    """Parse a paths file into observations.

    Header ``levels <m>`` on the first non-comment line; each data line has up
    to m tab-separated labels, with trailing fields left empty for partial
    paths.  Raises FormatError with the offending line number.
    """
    m = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if m is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "levels":
                raise FormatError("expected header 'levels <m>'", lineno)
            try:
                m = int(parts[1])
            except ValueError:
                raise FormatError(f"bad level count {parts[1]!r}", lineno) from None
            if m < 2:
                raise FormatError(f"level count must be >= 2, got {m}", lineno)
            continue
        fields = line.split("\t")
        if len(fields) > m:
            raise FormatError(f"{len(fields)} fields but levels is {m}", lineno)
        labels = [normalize_label(f, case_fold) for f in fields]
        while labels and not labels[-1]:
            labels.pop()
        if not labels or not labels[0]:
            raise FormatError("empty first label", lineno)
        if any(not lab for lab in labels):
            raise FormatError("empty label inside path", lineno)
        if len(labels) < 2:
            raise FormatError("path needs at least 2 labels", lineno)
        yield Observation.from_labels(labels)
    if m is None:
        raise FormatError("missing 'levels <m>' header")


def paths_level_count(lines: Iterable[str]) -> int:
    """Read just the ``levels <m>`` header of a paths file."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] != "levels":
            raise FormatError("expected header 'levels <m>'", lineno)
        try:
            m = int(parts[1])
        except ValueError:
            raise FormatError(f"bad level count {parts[1]!r}", lineno) from None
        if m < 2:
            raise FormatError(f"level count must be >= 2, got {m}", lineno)
        return m
    raise FormatError("missing 'levels <m>' header")


def format_paths(observations: Iterable[Observation], m: int) -> str:
    """Serialize observations back to the paths format (inverse of parse_paths)."""
    out = [f"levels {m}"]
    for obs in observations:
        labels = list(obs.labels)
        labels += [""] * (m - len(labels))
        out.append("\t".join(labels))
    return "\n".join(out) + "\n"


def parse_search_log(
    lines: Iterable[str],
    case_fold: bool = True,
    stats: ParseStats | None = None,
) -> Iterator[SearchLogRow]:
    """Parse classified search-log lines.

    Rows whose term list is empty after cleaning are skipped and counted in
    ``stats`` rather than raised; structural problems (missing fields, empty
    classification) raise FormatError.
    """
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 3:
            raise FormatError(f"expected 3 tab-separated fields, got {len(fields)}", lineno)
        user_id = fields[0].strip()
        classification = normalize_label(fields[1], case_fold)
        if not classification:
            raise FormatError("empty classification", lineno)
        terms: list[str] = []
        seen: set[str] = set()
        for raw_term in "\t".join(fields[2:]).split("|"):
            term = normalize_label(raw_term, case_fold)
            if term and term not in seen:
                seen.add(term)
                terms.append(term)
        if not terms:
            if stats is not None:
                stats.skipped += 1
                stats.messages.append(f"line {lineno}: no terms after cleaning")
            continue
        yield SearchLogRow(user_id, classification, tuple(terms))


def row_to_observations(row: SearchLogRow) -> list[Observation]:
    """One 2-level observation (classification -> term) per distinct term."""
    return [
        Observation(((0, row.classification), (1, term))) for term in row.terms
    ]
