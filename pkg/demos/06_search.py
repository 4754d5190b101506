"""
Searching for large progression-free sets
=========================================

Exact values come from a branch and bound over sets containing 0, checked
against plain enumeration for tiny n.  Larger n uses seeded greedy passes
and a random-restart improvement loop.  Every reported witness is
re-verified before it is returned.
"""

import tempfile
from pathlib import Path

from z4ap.bounds import theorem_bound
from z4ap.io import write_set
from z4ap.search import exact_r3, heuristic_r3, naive_r3, verify_file

for n in (1, 2):
    e = exact_r3(n)
    print(f"r3(Z_4^{n}) = {e.best_size}  (naive: {naive_r3(n).best_size}, nodes {e.nodes_explored})")
    print("  witness:", [str(v) for v in e.witness.vectors()])

# n = 3 takes about half a minute; heuristics give quick lower bounds
for n in range(3, 7):
    g = heuristic_r3(n, "greedy", seed=1)
    r = heuristic_r3(n, "random_restart", seed=1, budget=50)
    print(f"n={n}: greedy {g.best_size:4d}  restart {r.best_size:4d}  bound {theorem_bound(n):9.1f}")

# write a witness and run the consolidated checks on it
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "z4_2.txt"
    write_set(path, exact_r3(2).witness, ["maximum in Z_4^2"])
    rep = verify_file(path)
    print("verify:", {k: rep[k] for k in ("size", "progression_free", "coset_counts", "ok")})
