"""
Spin maps at a node
===================

The local ring at a node is A = R[x, y]/(xy - pi).  A non-free rank one
module E(p, q) with pq = pi carries spin maps b_0..b_r, classified by the
deviations sigma_i from an induced map.
"""
from rspin import (ArtinRing, EpqModule, SpinMapLocal, check_spin_relations, cokernel_length,
                   epq_isomorphic, extract_sigma, local_aut_group, make_spin_map)

R = ArtinRing(["t", "eps"], [[5, 0], [0, 2], [1, 1]])
t, eps = R.gens()

# p = t^2, q = t, so pi = t^3; twist (u, v) = (1, 2) for r = 3
E = EpqModule(R, t ** 2, t)
A = E.algebra
b = make_spin_map(E, 3, 1, 2)
print("induced map:", b.components)
print("relations hold:", check_spin_relations(b)[0], "cokernel length:", cokernel_length(b))
print("classification:", extract_sigma(b).classification)

# perturb the last component by eps * y: still a valid map, but sigma_2 = eps
c = SpinMapLocal(E, 3, (A.x, A(t ** 2), t * A.y, A.y ** 2 + eps * A.y))
rep = extract_sigma(c)
print("perturbed sigmas:", rep.sigmas, "->", rep.classification)

# killing eps turns it back into a spin map
print("mod eps:", extract_sigma(c.map_to(R.quotient([[0, 1]]))).classification)

# a component that breaks the relations is reported by index
bad = SpinMapLocal(E, 3, (A.x + t ** 2, A(t ** 2), t * A.y, A.y ** 2 + eps * A.y))
print("relations on a broken map:", check_spin_relations(bad))

# E(p, q) and E(p', q') are isomorphic iff p' = mu p, q' = q / mu for a unit mu
S = ArtinRing(["t"], [[4]])
s = S.gen("t")
print("mu =", epq_isomorphic(EpqModule(S, s, s ** 2), EpqModule(S, 2 * s, s ** 2 / 2)))
print("swapped:", epq_isomorphic(EpqModule(S, s, s ** 2), EpqModule(S, s ** 2, s)))

# automorphisms: U_r for a smoothing node, U_r x U_r when p = q = 0
print(local_aut_group(make_spin_map(EpqModule(S, s, s), 2, 1, 1)))
print(local_aut_group(make_spin_map(EpqModule(S, 0, 0), 2, 1, 1)))
