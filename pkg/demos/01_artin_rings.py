"""
Computing in Artin rings
========================

Truncated polynomial rings k[t1..tm]/(monomials) over Q or F_p, with exact
arithmetic.
"""
from rspin import GF, ArtinRing, associate_solve, rth_root_lift

# Q[t, eps] / (t^5, eps^2, eps t): a ring of dimension 6
R = ArtinRing(["t", "eps"], [[5, 0], [0, 2], [1, 1]])
t, eps = R.gens()
print(R, "dimension", R.dimension)

# anything with nonzero constant term is a unit
a = 1 + t + eps
print("a      =", a)
print("1 / a  =", a.inverse())
print("check  :", a * a.inverse() == 1)

# everything else is nilpotent
print("t^5    =", t ** 5, "; eps * t =", eps * t)

# r-th roots of units lift uniquely from a root of the constant term
gamma = 8 + t
lam = rth_root_lift(gamma, 3, 2)
print("cube root of", gamma, "=", lam)
print("lam^3 == gamma:", lam ** 3 == gamma)

# associates: find a unit lam with lam * a == b
b = (2 - t) * t ** 2
print("associate of t^2 and", b, ":", associate_solve(t ** 2, b))

# over F_5 the same machinery works with integer residues
F = ArtinRing(["t"], [[4]], GF(5))
u = F.gen("t")
print("in", F, ": (1 + t)^-1 =", (1 + u) ** -1)
