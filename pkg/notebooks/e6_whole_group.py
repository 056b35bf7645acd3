"""W(E6) with L = S: the five cuspidal classes and their characters.

The classes of W(E6) are named by Carter diagrams; two classes never share a
characteristic polynomial on V, so each label is located by its polynomial.
The script induces the five shipped linear characters to W, prints their
values next to rho_S and the sign character, and checks that they add up to
rho_S.  omega_S is evaluated on a few classes only (the full row takes a few
minutes; pass --full for it).

Run:  python3 notebooks/e6_whole_group.py [--full]
"""
import sys

from coxchar.carter import match_carter
from coxchar.charlib import induce_linear
from coxchar.coxgroup import coxeter_group
from coxchar.cyclotomic import cyc, format_cyclotomic
from coxchar.descent import rho_tilde
from coxchar.osalg import omega_character, sign_character
from coxchar.tables import data_dir, parse_table, parse_values
from coxchar.verify import sample_classes

E6 = coxeter_group("E6")
W = E6.whole()
vals = parse_values(data_dir() / "E6-S.vals")
labels = [c if c != "empty" else "" for c in vals.columns]
where = match_carter(W, labels)
cols = [where[c] for c in labels]

table = parse_table(data_dir() / "E6-S.tbl")
rows = {e.label: induce_linear(e.character, W) for e in table.entries}
rho = [cyc(v) for v in rho_tilde(E6, E6.datum.labels)]
rows["rho_S"] = rho
rows["epsilon"] = [cyc(v) for v in sign_character(W)]

full = "--full" in sys.argv
picked = None if full else set(sample_classes(E6))
omega = omega_character(E6, top_only=True, classes=picked)
rows["omega_S"] = [None if v is None else cyc(v) for v in omega]

width = 7
print("class".ljust(9) + "".join((c or "1")[:width].rjust(width) for c in vals.columns))
for name, row in rows.items():
    cells = ["?" if row[j] is None else format_cyclotomic(row[j]) for j in cols]
    print(name.ljust(9) + "".join(x.rjust(width) for x in cells))

total = None
for e in table.entries:
    total = rows[e.label] if total is None else total + rows[e.label]
assert list(total) == rho
for k in rows:
    if k in vals.rows:
        assert all(rows[k][j] is None or rows[k][j] == v for j, v in zip(cols, vals.rows[k])), k
print("\nsum of the induced characters equals rho_S; every printed value matches the stored table")
print(f"degrees: {[int(rows[e.label][0]) for e in table.entries]}")
