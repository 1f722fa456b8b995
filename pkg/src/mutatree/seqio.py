"""Count tables and sequences in b-file, CSV and JSON-lines form, plus OEIS goldens."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .models import (
    DivisionByZeroCount,
    MutationModel,
    coeff_new_type,
    coeff_trees,
    coeff_vertices,
    proportion,
)

__all__ = [
    "CountRow",
    "OeisRef",
    "OEIS_REFS",
    "NonMonotonicIndex",
    "MissingGolden",
    "GoldenReport",
    "emit_bfile",
    "parse_bfile",
    "closed_form_rows",
    "emit_rows",
    "emit_table",
    "golden_path",
    "compare_golden",
]

CSV_HEADER = ("n", "trees", "vertices", "new_type", "proportion")


class NonMonotonicIndex(ValueError):
    pass


class MissingGolden(FileNotFoundError):
    pass


@dataclass(frozen=True)
class CountRow:
    n: int
    trees: int
    vertices: int
    new_type: int

    def proportion(self) -> Fraction | None:
        if self.vertices == 0:
            return None
        return Fraction(self.new_type, self.vertices)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.trees, self.vertices, self.new_type)


def emit_bfile(rows: Iterable[tuple[int, int]]) -> str:
    """``"n value"`` per line, strictly increasing ``n``."""
    out = []
    prev = None
    for n, value in rows:
        if prev is not None and n <= prev:
            raise NonMonotonicIndex(f"index {n} follows {prev}")
        prev = n
        out.append(f"{n} {value}\n")
    return "".join(out)


def parse_bfile(text: str) -> list[tuple[int, int]]:
    """Inverse of :func:`emit_bfile`; ``#`` comments and blank lines are skipped."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n, value = line.split()
        rows.append((int(n), int(value)))
    return rows


def closed_form_rows(model: MutationModel, n_max: int) -> list[CountRow]:
    return [
        CountRow(n, coeff_trees(model, n), coeff_vertices(model, n), coeff_new_type(model, n))
        for n in range(n_max + 1)
    ]


def _fraction_str(p: Fraction | None) -> str:
    if p is None:
        return ""
    return f"{p.numerator}/{p.denominator}"


def emit_rows(rows: Sequence[CountRow], fmt: str) -> str:
    """Serialize rows as ``csv``, ``jsonl`` or ``bfile`` (the trees column)."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([r.n, r.trees, r.vertices, r.new_type, _fraction_str(r.proportion())])
        return buf.getvalue()
    if fmt == "jsonl":
        lines = []
        for r in rows:
            p = r.proportion()
            rec = {
                "n": str(r.n),
                "trees": str(r.trees),
                "vertices": str(r.vertices),
                "new_type": str(r.new_type),
                "proportion": None if p is None else _fraction_str(p),
            }
            lines.append(json.dumps(rec) + "\n")
        return "".join(lines)
    if fmt == "bfile":
        return emit_bfile((r.n, r.trees) for r in rows)
    raise ValueError(f"unknown format {fmt!r}")


def emit_table(model: MutationModel, n_max: int, fmt: str = "csv") -> str:
    """Closed-form count table for ``model`` at sizes ``0..n_max``."""
    return emit_rows(closed_form_rows(MutationModel(model), n_max), fmt)


# -- OEIS goldens -----------------------------------------------------------------


@dataclass(frozen=True)
class OeisRef:
    """A vendored OEIS sequence and how it lines up with a local series.

    ``offset`` is the OEIS index that corresponds to local ``n = 0``.  Entries
    flagged ``initial_term_differs`` agree everywhere except the first term.
    """

    id: str
    offset: int
    which: str
    model: MutationModel
    initial_term_differs: bool = False

    def __post_init__(self):
        if len(self.id) != 7 or self.id[0] != "A" or not self.id[1:].isdigit():
            raise ValueError(f"bad A-number {self.id!r}")
        if self.which not in ("trees", "vertices", "new_type", "t0"):
            raise ValueError(f"bad column {self.which!r}")


OEIS_REFS: dict[str, OeisRef] = {
    r.id: r
    for r in (
        OeisRef("A000984", -1, "trees", MutationModel.SHORT_LIVED),
        OeisRef("A001700", 0, "trees", MutationModel.TOGGLE),
        OeisRef("A007852", 1, "t0", MutationModel.ENT),
        OeisRef("A007856", 1, "trees", MutationModel.ENT),
        OeisRef("A097070", 0, "vertices", MutationModel.RIGHT_BRANCH),
        OeisRef("A114121", 0, "new_type", MutationModel.RIGHT_BRANCH, initial_term_differs=True),
        OeisRef("A097613", 1, "new_type", MutationModel.RIGHT_PATH_STAR, initial_term_differs=True),
    )
}


def golden_path(ref: OeisRef | str) -> Path:
    ident = ref.id if isinstance(ref, OeisRef) else ref
    return Path(str(resources.files("mutatree") / "data" / "oeis" / f"b{ident[1:]}.txt"))


@dataclass
class GoldenReport:
    ref: OeisRef
    # (oeis index, local n, expected, computed)
    terms: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def mismatches(self) -> list[tuple[int, int, int, int]]:
        return [t for t in self.terms if t[2] != t[3]]

    @property
    def matched(self) -> int:
        return len(self.terms) - len(self.mismatches)

    @property
    def ok(self) -> bool:
        """All terms agree, or only the first one when the entry is flagged so."""
        bad = self.mismatches
        if not self.ref.initial_term_differs:
            return not bad
        return len(bad) == 1 and bad[0] is self.terms[0]

    def format(self) -> str:
        r = self.ref
        head = f"{r.id} vs {r.model.value}/{r.which}: {self.matched}/{len(self.terms)} terms match"
        lines = [head]
        for k, n, want, got in self.mismatches:
            note = " (initial term, expected)" if r.initial_term_differs and k == self.terms[0][0] else ""
            lines.append(f"  a({k}) = {want} but local [z^{n}] = {got}{note}")
        lines.append("  OK" if self.ok else "  FAIL")
        return "\n".join(lines)


def compare_golden(
    ref: OeisRef,
    local_terms: Sequence[int],
    golden_file: str | Path | None = None,
) -> GoldenReport:
    """Align vendored OEIS terms with ``local_terms`` (indexed from local n = 0)."""
    path = Path(golden_file) if golden_file is not None else golden_path(ref)
    if not path.is_file():
        raise MissingGolden(str(path))
    report = GoldenReport(ref)
    for k, want in parse_bfile(path.read_text()):
        n = k - ref.offset
        if n < 0:
            continue
        if n >= len(local_terms):
            break
        report.terms.append((k, n, want, int(local_terms[n])))
    return report


def proportion_or_none(model: MutationModel, n: int) -> Fraction | None:
    try:
        return proportion(model, n)
    except DivisionByZeroCount:
        return None
