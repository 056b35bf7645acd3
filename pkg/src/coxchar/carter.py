"""Carter diagram labels for conjugacy classes, matched by characteristic polynomial.

In ``W(E6)`` the 25 classes have pairwise distinct characteristic
polynomials on ``V``, so a Carter label (``A2^3``, ``D4(a1)``, ``E6`` ...)
determines its class through the polynomial of its diagram.
"""
from __future__ import annotations

import re

from sympy import Matrix, Poly, cyclotomic_poly, symbols

t = symbols("t")

_E_POLYS = {
    "E6": lambda: cyclotomic_poly(3, t) * cyclotomic_poly(12, t),
    "E6(a1)": lambda: cyclotomic_poly(9, t),
    "E6(a2)": lambda: cyclotomic_poly(3, t) * cyclotomic_poly(6, t) ** 2,
}

_COMPONENT = re.compile(r"(E6\(a[12]\)|E6|[AD]\d+(?:\(a\d+\))?)(?:\^(\d+))?")


def _component_poly(name):
    if name in _E_POLYS:
        return _E_POLYS[name](), 6
    m = re.fullmatch(r"([AD])(\d+)(?:\(a(\d+)\))?", name)
    fam, k, a = m.group(1), int(m.group(2)), m.group(3)
    if fam == "A":
        return sum(t**i for i in range(k + 1)), k
    if a is None:
        return (t ** (k - 1) + 1) * (t + 1), k
    j = int(a)
    return (t ** (k - 1 - j) + 1) * (t ** (j + 1) + 1), k


def carter_polynomial(label, rank):
    """Characteristic polynomial on ``V`` (dimension ``rank``) of a class with the given Carter label."""
    poly, used = 1, 0
    if label not in ("", "0", "1", "empty"):
        pos = 0
        while pos < len(label):
            m = _COMPONENT.match(label, pos)
            if not m:
                raise ValueError(f"cannot read Carter label {label!r}")
            p, k = _component_poly(m.group(1))
            mult = int(m.group(2) or 1)
            poly *= p**mult
            used += k * mult
            pos = m.end()
    if used > rank:
        raise ValueError(f"{label} does not fit in rank {rank}")
    return Poly(poly * (t - 1) ** (rank - used), t)


def class_polynomial(box, x):
    M = Matrix(box.matrix(int(x)).tolist())
    return Poly(M.charpoly(t).as_expr(), t)


def match_carter(G, labels):
    """Class number of ``G`` for each Carter label; the match must be unique."""
    box = G.box
    polys = [class_polynomial(box, c.rep) for c in G.classes]
    out = {}
    for lab in labels:
        want = carter_polynomial(lab, box.rank)
        hits = [k for k, p in enumerate(polys) if p == want]
        if len(hits) != 1:
            raise ValueError(f"Carter label {lab} matches {len(hits)} classes")
        out[lab] = hits[0]
    return out
