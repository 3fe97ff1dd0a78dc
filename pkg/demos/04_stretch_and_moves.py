"""
Stretch experiments and move accounting
=======================================

Spanners built by a greedy adversary, emulators converted back into
spanners, and an exact bookkeeping of how alternate paths lose length.
"""

from spannerlb import build_outer, replace_with_biclique
from spannerlb.moves import build_move_instance, move_experiment
from spannerlb.stretch_lab import (
    critical_pair_emulator,
    emulator_certificate,
    emulator_to_spanner,
    greedy_plus_k_spanner,
    measure_stretch,
)

ob = replace_with_biclique(build_outer(8, 4), psi=2)

# %% A greedy +2 spanner keeps every edge here: the instance is built so
# that nothing can be dropped cheaply.
res = greedy_plus_k_spanner(ob.graph, 2)
print(res.graph.m, "of", ob.graph.m, "edges kept")
pairs = [(p.nodes[0], p.nodes[-1]) for p in ob.paths]
print("max error on critical pairs:", measure_stretch(ob.graph, res.graph, pairs).max_error)

# %% An emulator with a few shortcut edges, and its conversion.
em = critical_pair_emulator(ob, count=len(ob.paths) // 64, seed=7)
v = emulator_certificate(ob, em)
print(f"{v.edges} emulator edges, witness path {v.witness} with error {v.witness_error}")

conv = emulator_to_spanner(ob, critical_pair_emulator(ob))
over = [a for a in conv.converted if not a.within_bound]
print(len(conv.converted), "converted,", sum(a.preserved for a in conv.converted), "distance preserved,",
      len(over), "above 2a/r clique edges")

# %% Moves.  Build the dense striped instance (a few seconds).
big = build_move_instance()
ex = move_experiment(big, references=2, per_reference=25)
print(ex.alternates, "alternates,", ex.detours, "backward detours")
print("classes:", ex.class_counts)
print("smallest backward excess:", ex.min_backward_delta)
print("all identities exact:", ex.identity_failures == 0)
