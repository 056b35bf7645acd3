"""Mechanical verification of the decomposition identities, with reports.

For a pair ``(W, L)`` the identities on ``N_W(W_L)`` are

* ``ThmC-sum``:   ``sum_w Ind phi_w = rho~_L``
* ``ThmC-omega``: ``rho~_L = alpha_L * epsilon * omega~_L``

and for the whole group, assembling one subset ``L`` per shape,

* ``ThmA-rho``:   ``rho = sum_w Ind_{C_W(w)}^W phi_w``
* ``ThmA-omega``: ``omega = epsilon * sum_w Ind_{C_W(w)}^W (alpha_w phi_w)``.

Every comparison is an exact equality of cyclotomic numbers.
"""
from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .charlib import LinearChar, cuspidal_data, induce_linear, solve_assignment
from .coxgroup import GroupBox, coxeter_group, positions_of
from .cyclotomic import cyc, format_cyclotomic
from .descent import rho_tilde, rho_tilde_oracle, shapes
from .osalg import alpha, alpha_w_character, omega_tilde, omega_value, sign_character
from .tables import TableFile, find_table, parse_table, table_index, validate_table

IDENTITIES = ("ThmC-sum", "ThmC-omega", "ThmA-rho", "ThmA-omega")
MACHINE_HEADER = "# coxchar report 1"
ORACLE_LIMIT = 1200
SAMPLE_RANK = 6


class MissingData(LookupError):
    """No table and no permission to search."""


@dataclass(frozen=True)
class Diff:
    label: str
    expected: str
    got: str


@dataclass
class Record:
    group: str
    L: str
    identity: str
    status: str
    checked: int
    diffs: tuple = ()
    seconds: float = field(default=0.0, compare=False)
    note: str = field(default="", compare=False)


@dataclass
class Report:
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.status == "PASS" for r in self.records)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def extend(self, other):
        self.records.extend(other.records)
        return self

    def record(self, identity):
        for r in self.records:
            if r.identity == identity:
                return r
        raise KeyError(identity)


# -- rendering --------------------------------------------------------------------

def _fmt_L(box, L):
    return "{" + ",".join(box.datum.labels[i] for i in positions_of(box, L)) + "}"


def emit_report(report, fmt="text", timings=False):
    """Render a report.  Both formats are deterministic unless ``timings`` is set."""
    if fmt == "machine":
        lines = [MACHINE_HEADER]
        for r in report.records:
            diffs = ";".join(f"{d.label}:{d.expected}:{d.got}" for d in r.diffs) or "-"
            lines.append("\t".join([r.group, r.L, r.identity, r.status, str(r.checked), diffs]))
        return "\n".join(lines) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for r in report.records:
        head = f"{r.group:<4} {r.L:<16} {r.identity:<12} {r.status}  ({r.checked} classes)"
        if r.note:
            head += f"  {r.note}"
        if timings:
            head += f"  [{r.seconds:.2f}s]"
        lines.append(head)
        if r.diffs:
            w1 = max(5, *(len(d.label) for d in r.diffs))
            w2 = max(8, *(len(d.expected) for d in r.diffs))
            lines.append(f"    {'class':<{w1}}  {'expected':<{w2}}  got")
            for d in r.diffs:
                lines.append(f"    {d.label:<{w1}}  {d.expected:<{w2}}  {d.got}")
    npass = sum(r.status == "PASS" for r in report.records)
    lines.append(f"{npass} passed, {len(report.records) - npass} failed")
    return "\n".join(lines) + "\n"


def parse_report(text):
    """Inverse of ``emit_report(report, "machine")``."""
    lines = text.splitlines()
    if not lines or lines[0] != MACHINE_HEADER:
        raise ValueError("not a machine-format report")
    records = []
    for line in lines[1:]:
        if not line:
            continue
        group, L, identity, status, checked, diffs = line.split("\t")
        ds = ()
        if diffs != "-":
            ds = tuple(Diff(*d.split(":")) for d in diffs.split(";"))
        records.append(Record(group, L, identity, status, int(checked), ds))
    return Report(records)


# -- comparisons ----------------------------------------------------------------

def _as_cyc(v):
    return cyc(v) if not hasattr(v, "coeffs") else v


def compare(G, expected, got, group, L, identity, start, note=""):
    """Classwise comparison on the classes where both sides are known."""
    diffs = []
    checked = 0
    for c, e, g in zip(G.classes, expected, got):
        if e is None or g is None:
            continue
        checked += 1
        e, g = _as_cyc(e), _as_cyc(g)
        if e != g:
            diffs.append(Diff(c.label, format_cyclotomic(e), format_cyclotomic(g)))
    status = "PASS" if not diffs and checked else "FAIL"
    return Record(group, L, identity, status, checked, tuple(diffs), time.perf_counter() - start, note)


def sample_classes(box):
    """Identity, a simple reflection, the longest element and a Coxeter element."""
    W = box.whole()
    picks = [0, box.from_word([1]), box.longest, box.from_word(list(range(1, box.rank + 1)))]
    out = []
    for x in picks:
        k = int(W.class_of[x])
        if k not in out:
            out.append(k)
    return sorted(out)


# -- parallel evaluation of omega ----------------------------------------------------

def _omega_tilde_job(args):
    name, pos, k = args
    box = coxeter_group(name)
    return omega_tilde(box, pos_labels(box, pos), classes={k})[k]


def _omega_job(args):
    name, x = args
    return omega_value(coxeter_group(name), x)


def pos_labels(box, pos):
    return tuple(box.datum.labels[i] for i in pos)


def _pool_map(fn, jobs, n):
    if n <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(min(n, len(jobs))) as pool:
        return pool.map(fn, jobs, chunksize=1)


def _omega_tilde_values(box, L, classes, jobs):
    pos = positions_of(box, L)
    G = cuspidal_data(box, L)[0]
    todo = range(len(G.classes)) if classes is None else sorted(classes)
    if jobs <= 1:
        return omega_tilde(box, L, classes=None if classes is None else set(classes))
    vals = _pool_map(_omega_tilde_job, [(box.datum.name, pos, k) for k in todo], jobs)
    out = [None] * len(G.classes)
    for k, v in zip(todo, vals):
        out[k] = v
    return out


def _omega_values(box, classes, jobs):
    W = box.whole()
    todo = range(len(W.classes)) if classes is None else sorted(classes)
    vals = _pool_map(_omega_job, [(box.datum.name, W.classes[k].rep) for k in todo], jobs)
    out = [None] * len(W.classes)
    for k, v in zip(todo, vals):
        out[k] = v
    return out


# -- assignments ---------------------------------------------------------------------

def _box(group):
    return group if isinstance(group, GroupBox) else coxeter_group(group)


def _load_table(table):
    if isinstance(table, TableFile):
        if not table.validated:
            validate_table(table)
        return table
    return parse_table(table)


def table_characters(table, box, L):
    """``(representative, linear character)`` pairs of a validated table for ``(box, L)``."""
    if table.group != box.datum.name or positions_of(box, table.L) != positions_of(box, L):
        raise ValueError(
            f"table is for {table.group} {{{','.join(table.L)}}}, not {box.datum.name} {_fmt_L(box, L)}"
        )
    return [(e.rep, e.character) for e in table.entries]


def _characters(box, L, table, solve):
    """``([(rep, LinearChar)], source note)``; the list is ``None`` if the solver fails."""
    if table is None and not solve:
        table = find_table(box.datum.name, L)
        if table is None:
            raise MissingData(f"no table for {box.datum.name} {_fmt_L(box, L)}")
    if table is not None:
        t = _load_table(table)
        return table_characters(t, box, L), f"table {Path(t.source).name}"
    asg = solve_assignment(box, L)
    if asg is None:
        return None, "solver found no assignment"
    return list(zip(asg.reps, asg.characters)), "solver"


# -- the identities -----------------------------------------------------------------------

def verify_theorem_C(group, L, table=None, solve=False, full_omega=False, oracle=False, jobs=1):
    """Check ``sum Ind phi_w = rho~_L = alpha_L eps omega~_L`` on ``N_W(W_L)``.

    ``table`` is a path or :class:`TableFile`; without it the shipped table
    is used, or the solver when ``solve`` is set.  For rank-6 parabolics the
    omega side is evaluated on :func:`sample_classes` unless ``full_omega``.
    """
    box = _box(group)
    name, Ls = box.datum.name, _fmt_L(box, L)
    pos = positions_of(box, L)
    G, _ = cuspidal_data(box, L)
    report = Report()

    start = time.perf_counter()
    chars, source = _characters(box, L, table, solve)
    rt = rho_tilde(box, L)
    if chars is None:
        report.records.append(Record(name, Ls, "ThmC-sum", "FAIL", 0, (), time.perf_counter() - start, source))
    else:
        total = None
        for _, lc in chars:
            f = induce_linear(lc, G)
            total = f if total is None else total + f
        report.records.append(compare(G, rt, total.values, name, Ls, "ThmC-sum", start, source))

    start = time.perf_counter()
    classes = None
    note = ""
    if len(pos) >= SAMPLE_RANK and not full_omega:
        classes = sample_classes(box) if len(G.classes) == len(box.whole().classes) else None
        if classes is not None:
            note = f"sampled {len(classes)} of {len(G.classes)} classes"
    ot = _omega_tilde_values(box, L, classes, jobs)
    a = alpha(box, L)
    eps = sign_character(G)
    rhs = [None if o is None else x * e * o for o, x, e in zip(ot, a, eps)]
    report.records.append(compare(G, rt, rhs, name, Ls, "ThmC-omega", start, note))

    if oracle and G.levi.size <= ORACLE_LIMIT:
        start = time.perf_counter()
        report.records.append(compare(G, rt, rho_tilde_oracle(box, L), name, Ls, "Oracle-rho", start))
        start = time.perf_counter()
        raw = omega_tilde(box, L, cutoff=False, classes=None if classes is None else set(classes))
        report.records.append(compare(G, ot, raw, name, Ls, "Oracle-omega", start, "no trace cutoff"))
    return report


def _alpha_char(box, x, C):
    vals = alpha_w_character(box, x, C)
    exps = np.zeros(C.size, dtype=np.int64)
    for c, v in zip(C.classes, vals):
        if v == -1:
            exps[C.local(c.members)] = 1
    return LinearChar(C, 2, exps)


class MissingShapeData(MissingData):
    pass


def shape_sources(box, tables=None, solve=False):
    """For each shape: ``(L, table path or None)``; raises if a shape has neither."""
    index = {}
    if tables is not None:
        if isinstance(tables, (list, tuple)):
            for t in tables:
                t = t if isinstance(t, TableFile) else parse_table(t, validate=False)
                index[(t.group, positions_of(box, t.L))] = t
        else:
            index = table_index(tables)
    out = []
    for sh in shapes(box):
        hit = None
        for member in sh.members:
            t = index.get((box.datum.name, member))
            if t is not None:
                hit = (member, t)
                break
        if hit is None:
            if not solve:
                raise MissingShapeData(
                    f"no table for the shape of {_fmt_L(box, pos_labels(box, sh.rep))} in {box.datum.name}"
                )
            hit = (sh.rep, None)
        out.append(hit)
    return out


def verify_theorem_A(group, tables=None, solve=False, full_omega=False, jobs=1):
    """Check the decompositions of ``rho`` and ``omega`` on ``W``.

    One subset is taken per shape, with characters from ``tables`` (a
    directory or a list of table files) where available and from the solver
    otherwise (only when ``solve`` is set).  Induction runs in one step from
    ``C_W(w)`` to ``W``.
    """
    box = _box(group)
    name = box.datum.name
    W = box.whole()
    report = Report()
    sources = shape_sources(box, tables, solve)

    start = time.perf_counter()
    ncusp = sum(len(cuspidal_data(box, pos_labels(box, L))[1]) for L, _ in sources)
    status = "PASS" if ncusp == len(W.classes) else "FAIL"
    diffs = () if status == "PASS" else (Diff("count", str(len(W.classes)), str(ncusp)),)
    report.records.append(
        Record(name, "S", "ThmA-classes", status, len(W.classes), diffs, time.perf_counter() - start)
    )

    start = time.perf_counter()
    rho_sum = None
    omega_sum = None
    used = {"table": 0, "solver": 0}
    failed = []
    for L, t in sources:
        labels = pos_labels(box, L)
        chars, src = _characters(box, labels, t, t is None)
        if chars is None:
            failed.append(_fmt_L(box, labels))
            continue
        used["table" if t is not None else "solver"] += 1
        for x, lc in chars:
            f = induce_linear(lc, W)
            rho_sum = f if rho_sum is None else rho_sum + f
            g = induce_linear(lc.times(_alpha_char(box, x, lc.group)), W)
            omega_sum = g if omega_sum is None else omega_sum + g
    note = f"{used['table']} shapes from tables, {used['solver']} solved"
    if failed:
        note += "; unsolved: " + " ".join(failed)
    regular = [box.size] + [0] * (len(W.classes) - 1)
    got = rho_sum.values if rho_sum is not None else [None] * len(W.classes)
    rec = compare(W, regular, got, name, "S", "ThmA-rho", start, note)
    if failed:
        rec.status = "FAIL"
    report.records.append(rec)

    start = time.perf_counter()
    classes = None
    onote = ""
    if box.rank >= SAMPLE_RANK and not full_omega:
        classes = sample_classes(box)
        onote = f"sampled {len(classes)} of {len(W.classes)} classes"
    om = _omega_values(box, classes, jobs)
    eps = sign_character(W)
    rhs = [None] * len(W.classes) if omega_sum is None else [e * v for e, v in zip(eps, omega_sum.values)]
    rec = compare(W, om, rhs, name, "S", "ThmA-omega", start, onote)
    if failed:
        rec.status = "FAIL"
    report.records.append(rec)
    return report
