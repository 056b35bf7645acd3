"""Character-table data files.

A table lists, for a pair ``(W, L)``, one representative of every cuspidal
class of ``W_L`` together with generators of its centraliser in ``W`` and
the values of a linear character on them.  The format is line oriented::

    # comment
    group B 5
    L 1 2 4 5
    let w15 = 1245            # a word macro
    let M = {2 3 4 5 6}       # a subset; the token wM is its longest element
    class 1^2 rep 1 212       # DERIVED
    gen 1 value -1
    gen w0 value E(3)^2

Words are runs of generator labels (``1'`` is a label in type D); several
tokens on one line are multiplied left to right.  Reserved tokens: ``e``
(identity), ``w0`` (longest element of ``W``), ``wL`` (longest element of
``W_L``) and ``r`` (reflection in the highest root).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .charlib import (
    InconsistentCharacter,
    LinearCharacterSpec,
    NotGenerating,
    cuspidal_data,
    linear_character_from_spec,
)
from .coxgroup import _parabolic_cached, coxeter_group, positions_of
from .cyclotomic import CyclotomicSyntaxError, parse_cyclotomic

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"e", "r", "w0", "wL", "group", "L", "let", "class", "gen", "rep", "value"}


class TableError(ValueError):
    pass


class TableSyntaxError(TableError):
    def __init__(self, message, line, column=1, source=""):
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
        self.line, self.column = line, column


class TableSemanticError(TableError):
    def __init__(self, message, line, witness=None, source=""):
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}: {message}")
        self.line, self.witness = line, witness


@dataclass
class GenEntry:
    tokens: tuple
    element: int
    value: object  # Cyclotomic
    line: int


@dataclass
class ClassEntry:
    label: str
    rep_tokens: tuple
    rep: int
    line: int
    gens: list = field(default_factory=list)
    derived: bool = False
    note: str = ""
    # filled in by validation
    centralizer: object = None
    character: object = None  # LinearChar


@dataclass
class TableFile:
    source: str
    family: str
    rank: int
    L: tuple  # generator labels
    lets: dict
    subsets: dict
    entries: list
    validated: bool = False
    normalizer: object = None

    @property
    def group(self):
        return f"{self.family}{self.rank}"

    @property
    def box(self):
        return coxeter_group(self.family, self.rank)

    def entry(self, label):
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def characters(self):
        if not self.validated:
            validate_table(self)
        return [e.character for e in self.entries]


def _tokens(text, offset):
    return [(m.group(), offset + m.start() + 1) for m in re.finditer(r"\S+", text)]


def _split_comment(raw):
    k = raw.find("#")
    if k < 0:
        return raw, ""
    return raw[:k], raw[k + 1:].strip()


class _Reader:
    def __init__(self, source):
        self.source = source
        self.family = None
        self.rank = None
        self.L = None
        self.lets = {}
        self.subsets = {}
        self.entries = []
        self.box = None

    def error(self, msg, line, col=1):
        raise TableSyntaxError(msg, line, col, self.source)

    # -- words -------------------------------------------------------------
    def _longest_of(self, labels, line, col):
        try:
            pos = positions_of(self.box, labels)
        except ValueError as exc:
            self.error(str(exc), line, col)
        sub = _parabolic_cached(self.box, pos)
        return int(sub.members[np.argmax(self.box.length[sub.members])])

    def resolve(self, tok, line, col):
        box = self.box
        if tok in self.lets:
            return self.lets[tok]
        if tok == "e":
            return 0
        if tok == "w0":
            return int(box.longest)
        if tok == "wL":
            if self.L is None:
                self.error("wL used before the L line", line, col)
            return self._longest_of(self.L, line, col)
        if tok == "r":
            datum = box.datum
            perm = datum.reflection_perm(datum.highest_root)
            return int(box.index(np.asarray(perm)[None, :])[0])
        if tok.startswith("w") and tok[1:] in self.subsets:
            return self._longest_of(self.subsets[tok[1:]], line, col)
        try:
            return box.from_word(tok)
        except ValueError as exc:
            self.error(f"cannot read word {tok!r}: {exc}", line, col)

    def word(self, toks, line):
        if not toks:
            self.error("empty word", line)
        x = 0
        for tok, col in toks:
            x = self.box.mul(x, self.resolve(tok, line, col))
        return int(x)

    # -- lines -------------------------------------------------------------
    def need_header(self, line, col):
        if self.box is None:
            self.error("missing group line", line, col)
        if self.L is None:
            self.error("missing L line", line, col)

    def feed(self, lineno, raw, previous_comment):
        body, comment = _split_comment(raw)
        toks = _tokens(body, 0)
        if not toks:
            return
        head, hcol = toks[0]
        rest = toks[1:]
        if head == "group":
            if self.box is not None:
                self.error("duplicate group line", lineno, hcol)
            if len(rest) != 2 or not rest[1][0].isdigit():
                self.error("expected: group <family> <rank>", lineno, hcol)
            family, rank = rest[0][0].upper(), int(rest[1][0])
            try:
                self.box = coxeter_group(family, rank)
            except ValueError as exc:
                self.error(str(exc), lineno, rest[0][1])
            self.family, self.rank = family, rank
        elif head == "L":
            if self.box is None:
                self.error("missing group line", lineno, hcol)
            if self.L is not None:
                self.error("duplicate L line", lineno, hcol)
            labels = []
            for tok, col in rest:
                if tok not in self.box.datum.labels:
                    self.error(f"{tok!r} is not a generator label", lineno, col)
                if tok in labels:
                    self.error(f"generator {tok} repeated", lineno, col)
                labels.append(tok)
            pos = positions_of(self.box, labels)
            self.L = tuple(self.box.datum.labels[i] for i in pos)
        elif head == "let":
            self.need_header(lineno, hcol)
            if len(rest) < 3 or rest[1][0] != "=":
                self.error("expected: let <name> = <tokens>", lineno, hcol)
            name, ncol = rest[0]
            if not _NAME.match(name) or name in _RESERVED:
                self.error(f"invalid macro name {name!r}", lineno, ncol)
            if name in self.lets or name in self.subsets:
                self.error(f"{name} already defined", lineno, ncol)
            value = rest[2:]
            if value[0][0].startswith("{"):
                text = " ".join(t for t, _ in value)
                m = re.fullmatch(r"\{\s*(.*?)\s*\}", text)
                if not m:
                    self.error("unterminated subset", lineno, value[0][1])
                labels = m.group(1).split()
                for lab in labels:
                    if lab not in self.box.datum.labels:
                        self.error(f"{lab!r} is not a generator label", lineno, value[0][1])
                self.subsets[name] = tuple(labels)
            else:
                self.lets[name] = self.word(value, lineno)
        elif head == "class":
            self.need_header(lineno, hcol)
            if len(rest) < 3 or rest[1][0] != "rep":
                self.error("expected: class <label> rep <tokens>", lineno, hcol)
            label = rest[0][0]
            if any(e.label == label for e in self.entries):
                self.error(f"class {label} listed twice", lineno, rest[0][1])
            toks = rest[2:]
            rep = self.word(toks, lineno)
            derived = "DERIVED" in comment or "DERIVED" in previous_comment
            self.entries.append(
                ClassEntry(label, tuple(t for t, _ in toks), rep, lineno, derived=derived, note=comment)
            )
        elif head == "gen":
            self.need_header(lineno, hcol)
            if not self.entries:
                self.error("gen line before any class line", lineno, hcol)
            names = [t for t, _ in rest]
            if "value" not in names:
                self.error("expected: gen <tokens> value <literal>", lineno, hcol)
            k = names.index("value")
            gen_toks = rest[:k]
            element = self.word(gen_toks, lineno)
            vcol = rest[k][1] + len("value")
            literal = body[vcol - 1:]
            try:
                value = parse_cyclotomic(literal)
            except CyclotomicSyntaxError as exc:
                lead = len(literal) - len(literal.lstrip())
                self.error(str(exc), lineno, vcol + lead + exc.column)
            self.entries[-1].gens.append(GenEntry(tuple(t for t, _ in gen_toks), element, value, lineno))
        else:
            self.error(f"unknown keyword {head!r}", lineno, hcol)

    def finish(self):
        if self.box is None:
            self.error("missing group line", 1)
        if self.L is None:
            self.error("missing L line", 1)
        return TableFile(
            self.source, self.family, self.rank, self.L, dict(self.lets), dict(self.subsets), self.entries
        )


def parse_table_text(text, source="<string>", validate=True):
    reader = _Reader(source)
    previous = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            previous = stripped[1:]
            continue
        reader.feed(lineno, raw, previous)
        previous = ""
    table = reader.finish()
    if validate:
        validate_table(table)
    return table


def parse_table(path, validate=True):
    """Read, parse and (by default) validate a table file."""
    path = Path(path)
    return parse_table_text(path.read_text(), str(path), validate)


def validate_table(table):
    """Check cuspidality, coverage, generation and the homomorphism property."""
    box = table.box
    src = table.source
    G, data = cuspidal_data(box, table.L)
    levi = G.levi
    cusp = {c.rep: (c, C) for c, C in data}
    cls_of = levi.class_of
    rep_class = {int(levi.class_of[c.rep]): c.rep for c, _ in data}
    seen = {}
    for e in table.entries:
        k = int(cls_of[e.rep])
        if k < 0:
            raise TableSemanticError(
                f"class {e.label}: representative {box.word_str(e.rep)} is not in W_L", e.line,
                box.word_str(e.rep), src,
            )
        if k not in rep_class:
            raise TableSemanticError(
                f"class {e.label}: representative {box.word_str(e.rep)} is not cuspidal in W_L",
                e.line, box.word_str(e.rep), src,
            )
        if k in seen:
            raise TableSemanticError(
                f"class {e.label} is the same W_L-class as {seen[k].label}", e.line,
                (seen[k].label, e.label), src,
            )
        seen[k] = e
        if not e.gens:
            raise TableSemanticError(f"class {e.label} has no generators", e.line, None, src)
        C = _centralizer_of(box, e.rep, cusp, rep_class[k])
        for g in e.gens:
            if not C.mask[g.element]:
                raise TableSemanticError(
                    f"class {e.label}: generator {' '.join(g.tokens)} does not centralise the representative",
                    g.line, box.word_str(g.element), src,
                )
        spec = LinearCharacterSpec(
            C, [(g.element, g.value) for g in e.gens], table.L, e.label, [g.tokens for g in e.gens]
        )
        try:
            e.character = linear_character_from_spec(spec)
        except InconsistentCharacter as exc:
            raise TableSemanticError(
                f"class {e.label}: values do not define a character ({exc})", e.line, exc.witness, src
            ) from None
        except NotGenerating as exc:
            raise TableSemanticError(
                f"class {e.label}: generators do not generate the centraliser ({exc})", e.line,
                C.size, src,
            ) from None
        e.centralizer = C
    missing = [rep_class[k] for k in rep_class if k not in seen]
    if missing:
        words = ", ".join(box.word_str(x) for x in missing)
        raise TableSemanticError(f"cuspidal classes not covered: {words}", 0, words, src)
    table.normalizer = G
    table.validated = True
    return table


def _centralizer_of(box, rep, cusp, class_rep):
    from .coxgroup import centralizer

    if rep == class_rep:
        return cusp[class_rep][1]
    return centralizer(box.whole(), rep)


# -- shipped data --------------------------------------------------------------------

def data_dir():
    return Path(str(resources.files("coxchar") / "data"))


def table_header(path):
    """``(group name, L labels)`` from the first lines of a table file."""
    family = rank = None
    for raw in Path(path).read_text().splitlines():
        body, _ = _split_comment(raw)
        toks = body.split()
        if not toks:
            continue
        if toks[0] == "group" and len(toks) == 3:
            family, rank = toks[1].upper(), int(toks[2])
        elif toks[0] == "L":
            return f"{family}{rank}", tuple(toks[1:])
    raise TableError(f"{path}: no header")


def table_index(directory=None):
    """Map ``(group, sorted L positions)`` to table paths in ``directory``."""
    directory = Path(directory) if directory is not None else data_dir()
    out = {}
    for p in sorted(directory.glob("*.tbl")):
        group, L = table_header(p)
        box = coxeter_group(group)
        out[(group, positions_of(box, L))] = p
    return out


def find_table(group, L, directory=None):
    box = coxeter_group(group)
    key = (box.datum.name, positions_of(box, L))
    return table_index(directory).get(key)


@dataclass
class ValueTable:
    """Rows of class-function values keyed by column labels."""

    source: str
    columns: tuple
    rows: dict  # row label -> tuple of Cyclotomic


def parse_values(path):
    """Read a ``columns`` / ``row`` file; ``.`` stands for zero."""
    path = Path(path)
    columns, rows = None, {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        body, _ = _split_comment(raw)
        toks = body.split()
        if not toks:
            continue
        if toks[0] == "columns":
            columns = tuple(toks[1:])
        elif toks[0] == "row":
            if columns is None or len(toks) != len(columns) + 2:
                raise TableSyntaxError("row length does not match the columns", lineno, 1, str(path))
            try:
                rows[toks[1]] = tuple(parse_cyclotomic("0" if v == "." else v) for v in toks[2:])
            except CyclotomicSyntaxError as exc:
                raise TableSyntaxError(str(exc), lineno, 1, str(path)) from None
        else:
            raise TableSyntaxError(f"unknown keyword {toks[0]!r}", lineno, 1, str(path))
    return ValueTable(str(path), columns, rows)
