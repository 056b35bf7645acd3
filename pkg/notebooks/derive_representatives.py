"""Find explicit representatives for table entries given only by class index.

Several tables name a cuspidal representative by its position in some
external class list (``w_13``, ``w_24`` ...).  Those positions cannot be
reproduced, so this script searches each cuspidal class of ``W_L`` for an
element ``x`` such that the listed generators (with ``REP`` standing for
``x`` itself) lie in ``C_W(x)``, generate it, and carry the listed values
as a linear character.  The first hit in (length, word) order is printed
as a ready-to-paste ``class`` block.

Run:  python3 notebooks/derive_representatives.py
"""
from coxchar.charlib import InconsistentCharacter, LinearCharacterSpec, NotGenerating, cuspidal_data, linear_character_from_spec
from coxchar.coxgroup import centralizer, coxeter_group
from coxchar.cyclotomic import parse_cyclotomic
from coxchar.tables import _Reader


def reader_for(group, L, lets=()):
    r = _Reader("<search>")
    box = coxeter_group(group)
    r.feed(1, f"group {box.datum.family} {box.rank}", "")
    r.feed(2, "L " + " ".join(L), "")
    for k, line in enumerate(lets):
        r.feed(3 + k, line, "")
    return r


def try_rep(r, x, pattern):
    box = r.box
    W = box.whole()
    C = centralizer(W, x)
    gens = []
    for tokens, value in pattern:
        g = 0
        for tok in tokens.split():
            g = box.mul(g, x if tok == "REP" else r.resolve(tok, 0, 0))
        if not C.mask[g]:
            return None
        gens.append((int(g), parse_cyclotomic(value)))
    try:
        return linear_character_from_spec(LinearCharacterSpec(C, gens))
    except (InconsistentCharacter, NotGenerating):
        return None


def search(group, L, pattern, lets=()):
    """First (class label, word) whose element realises ``pattern``."""
    r = reader_for(group, L, lets)
    box = r.box
    _, data = cuspidal_data(box, L)
    hits = []
    for c, _ in data:
        members = sorted(c.members.tolist(), key=lambda y: (box.length[y], box.word(y)))
        for x in members:
            if try_rep(r, x, pattern) is not None:
                hits.append((c.label, box.word_str(x)))
                break
    return hits


def epsilon_block(group, L, tokens):
    """Generators of ``C_W(x)`` with the sign character, for entries given as ``phi = epsilon``."""
    r = reader_for(group, L)
    box = r.box
    x = r.word([(t, 0) for t in tokens.split()], 0)
    C = centralizer(box.whole(), x)
    return [(box.word_str(g), -1 if box.length[g] % 2 else 1) for g in C.gens]


if __name__ == "__main__":
    jobs = [
        ("B5", ("1", "2", "4", "5"), "phi_13", [("1245", "E(3)"), ("w0", "1"), ("1", "-1")], ()),
        ("B5", ("1", "2", "4", "5"), "phi_15", [("REP", "E(6)"), ("w0", "1")], ()),
        ("B6", ("1", "2", "4", "5"), "phi_13", [("1245", "E(3)"), ("w0", "1"), ("wM", "1"), ("1", "-1")], ("let M = {1 2 3 4 5}",)),
        ("B6", ("1", "2", "4", "5"), "phi_15", [("REP", "E(6)"), ("w0", "1"), ("wM", "1")], ("let M = {1 2 3 4 5}",)),
        ("B6", ("1", "2", "3", "5", "6"), "phi_12", [("1", "-1"), ("2", "-1"), ("3", "-1"), ("56", "E(3)"), ("w0", "-1")], ()),
        ("B6", ("1", "2", "3", "5", "6"), "phi_24", [("REP", "E(3)^2"), ("1", "-1"), ("w0", "-1")], ()),
        ("B6", ("1", "2", "3", "5", "6"), "phi_30", [("123", "-E(3)"), ("56", "E(3)^2"), ("w0", "-1")], ()),
        ("B6", ("1", "2", "4", "5", "6"), "phi_23", [("1", "-1"), ("2", "-1"), ("456", "E(4)"), ("w0", "-1")], ()),
        ("B6", ("1", "2", "4", "5", "6"), "phi_25", [("12", "-1"), ("456", "E(4)"), ("w0", "-1")], ()),
        ("B6", ("1", "2", "4", "6"), "phi_12", [("1", "-1"), ("2", "-1"), ("4", "-1"), ("6", "-1"), ("5465", "1"), ("r", "1")], ()),
        ("B6", ("1", "2", "4", "6"), "phi_20", [("12", "-1"), ("4", "-1"), ("6", "-1"), ("5465", "1"), ("r", "1")], ()),
        ("D5", ("1'", "2", "3", "4"), "phi_9", [("3243", "-1"), ("1' w0", "E(4)")], ()),
        ("D5", ("1'", "2", "3", "4"), "phi_11", [("REP", "E(3)"), ("w0", "1")], ()),
        ("D6", ("1'", "2", "3", "4"), "phi_3", [("1'", "-1"), ("2", "-1"), ("3", "-1"), ("4", "-1"), ("6", "1"), ("wM", "1")], ("let M = {1' 2 3 4 5}",)),
        ("D6", ("1'", "2", "3", "4"), "phi_9", [("6", "1"), ("3243", "-1"), ("2 wM", "E(4)")], ("let M = {1' 2 3 4 5}",)),
        ("D6", ("1'", "2", "3", "4"), "phi_11", [("REP", "E(3)"), ("6", "1"), ("wM", "1")], ("let M = {1' 2 3 4 5}",)),
        ("D6", ("1'", "2", "3", "4", "5"), "phi_7", [("REP", "E(4)"), ("w0", "-1"), ("1'", "-1"), ("2", "-1"), ("3", "-1")], ()),
        ("D6", ("1'", "2", "3", "4", "5"), "phi_15", [("REP", "E(12)"), ("w0", "-1")], ()),
        ("D6", ("1'", "2", "3", "4", "5"), "phi_17", [("REP", "E(8)"), ("w0", "-1")], ()),
        ("E6", ("2", "3", "4", "5"), "phi_3", [("3", "-1"), ("4", "-1"), ("wM", "1"), ("w0", "1")], ("let M = {2 3 4 5 6}",)),
        ("E6", ("2", "3", "4", "5"), "phi_9", [("4354", "-1"), ("2 wM", "-E(4)"), ("243 w0", "E(4)")], ("let M = {2 3 4 5 6}",)),
        ("E6", ("2", "3", "4", "5"), "phi_11", [("2354", "E(3)"), ("wM", "1"), ("wN", "1")], ("let M = {2 3 4 5 6}", "let N = {1 2 3 4 5}")),
    ]
    for group, L, name, pattern, lets in jobs:
        print(group, "{" + ",".join(L) + "}", name, search(group, L, pattern, lets))
    print("D5 {1',2,3,4} phi_3 = epsilon on", epsilon_block("D5", ("1'", "2", "3", "4"), "wL"))
