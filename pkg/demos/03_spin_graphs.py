"""
Spin types on stable graphs
===========================

Each edge of the dual graph is either free or carries a twist (u, v) with
u + v = r.  A choice is allowed when every vertex has twisted degree
2g - 2 + val - (twists) divisible by r.
"""
from rspin import (StableGraph, aut_order, count_roots, degree_sum_check,
                   enumerate_spin_types, spin_corpus, universal_deformation_presentation,
                   validate_graph)

# a genus one vertex with a loop: total genus 2, r = 2
loop = StableGraph.build([1], [(0, 0)], 2)
print(validate_graph(loop))
for t in enumerate_spin_types(loop):
    print(t, "aut", aut_order(t), "roots", count_roots(t), "bookkeeping", degree_sum_check(t))

# two elliptic tails: the separating edge is forced to be non-free
sep = StableGraph.build([1, 1], [(0, 1)], 2)
print(enumerate_spin_types(sep))

# an unstable rational vertex is rejected with a diagnostic
print(validate_graph(StableGraph.build([0], [(0, 0)], 2)).diagnostics)

# deformation ring of the non-free loop type
p = universal_deformation_presentation(enumerate_spin_types(loop)[1])
print("generators", p.generators, "relations", p.relations)
print("pure cover", p.pure_cover_relations)

# the whole test corpus
corpus = spin_corpus()
total = sum(len(enumerate_spin_types(g)) for g in corpus)
print(len(corpus), "graphs,", total, "spin types")
