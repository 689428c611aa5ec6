"""
Limits along a smoothing
========================

After base change t -> t^r a node of order n becomes a chain of nr - 1
rational curves.  Normalizing the twisting divisor on the chain leaves a
single curve of degree r; its position fixes the twist at the node.
"""
from rspin import (NodeFamilyDatum, SemistableFibre, StableGraph, chain_degrees, limit_from_divisor,
                   limit_spin_type, normalize_chain)

for r, n, s0 in [(2, 1, 1), (4, 1, 1), (3, 2, 2), (5, 1, 0)]:
    sol = normalize_chain(s0, n, r)
    print(f"r={r} n={n} e1={s0} mod r:", sol.coeffs, "kink", sol.m, "degrees", sol.degrees,
          "twist", sol.twist)

# keeping e_i = i e_1 and then adding a single +r is not enough on long chains
literal = (-3, -2, -5)
print("single offset at r=4:", literal, "degrees", chain_degrees(literal))

# assemble a limit on the genus 4 graph with elliptic and genus 3 components
g = StableGraph.build([1, 3], [(0, 1)], 3)
print(limit_spin_type(g, [NodeFamilyDatum(0, 1, 2)]))

# or start from a twisting divisor on the resolved fibre
sep = StableGraph.build([1, 1], [(0, 1)], 2)
fibre = SemistableFibre.from_graph(sep)
print(fibre.components)
print(limit_from_divisor(fibre, {("v", 0): 0, ("e", 0, 1): 1, ("v", 1): 2}))
