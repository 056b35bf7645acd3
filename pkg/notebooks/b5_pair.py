"""A walk through one pair: W = W(B5) and L = {1,2,4,5}, a parabolic of type A2 x B2.

Steps:
  1. build the group and the normaliser N = N_W(W_L);
  2. compute rho~_L from the descent algebra and omega~_L from the
     Orlik-Solomon algebra of W_L, then alpha_L and the sign character;
  3. check rho~_L = alpha_L * eps * omega~_L class by class;
  4. read the shipped linear characters phi_w and induce them to N;
  5. ask the solver for its own choice of phi_w.

Run:  python3 notebooks/b5_pair.py
"""
from coxchar.charlib import SolverStats, induce_linear, solve_assignment
from coxchar.coxgroup import coxeter_group, normalizer
from coxchar.cyclotomic import cyc, format_cyclotomic
from coxchar.descent import rho_tilde
from coxchar.osalg import alpha, omega_tilde, sign_character
from coxchar.tables import data_dir, parse_table

W = coxeter_group("B5")
L = ("1", "2", "4", "5")
N = normalizer(W, L)
print(f"|W| = {W.size}, |W_L| = {N.levi.size}, |N_W(W_L)| = {N.size}, {len(N.classes)} classes")

rho = rho_tilde(W, L)
omega = omega_tilde(W, L)
a = alpha(W, L)
eps = sign_character(N)

print(f"\n{'class':>6} {'order':>5} {'rho~':>5} {'omega~':>6} {'alpha':>5} {'eps':>4}")
for c, r, o, x, e in zip(N.classes, rho, omega, a, eps):
    print(f"{c.label:>6} {W.order_of(c.rep):>5} {str(r):>5} {o:>6} {x:>5} {e:>4}")

assert rho == [x * e * o for x, e, o in zip(a, eps, omega)]
print("\nrho~_L = alpha_L * eps * omega~_L holds on every class")

table = parse_table(data_dir() / "B5-1245.tbl")
total = None
for entry in table.entries:
    lc = entry.character
    print(f"phi for {entry.label}: rep {W.word_str(entry.rep)}, |C_W(w)| = {lc.group.size}, "
          f"values on the centraliser's generators {[format_cyclotomic(v) for _, v in lc.generator_values()]}")
    f = induce_linear(lc, N)
    total = f if total is None else total + f
assert list(total) == [cyc(v) for v in rho]
print("the shipped characters induce to rho~_L")

stats = SolverStats()
sol = solve_assignment(W, L, stats=stats)
print(f"\nsolver: {stats.nodes} search nodes, candidate counts {stats.candidates}")
for rep, lc in zip(sol.reps, sol.characters):
    print(f"  {W.word_str(rep)}: character of order {lc.order}")
