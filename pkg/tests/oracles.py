"""Independent reference computations used by several test modules."""
from fractions import Fraction

import sympy
from sympy.polys.domains import QQ as SQQ
from sympy.polys.matrices import DomainMatrix

from rspin.local import SpinMapLocal


def nodal_product_oracle(a, b):
    """Multiply as polynomials in x, y, t... then fold x^i y^j -> pi^min(i,j)."""
    alg = a.algebra
    ring = alg.ring
    X, Y = sympy.symbols("X Y")
    gens = sympy.symbols(" ".join(f"g_{v}" for v in ring.variables) + " ")

    def coef_expr(c):
        return sum(sympy.Rational(str(v)) * sympy.prod([g ** k for g, k in zip(gens, e)])
                   for e, v in c.terms.items())

    def to_expr(el):
        out = 0
        for k, c in el.terms.items():
            mon = X ** k if k >= 0 else Y ** (-k)
            out += coef_expr(c) * mon
        return sympy.expand(out)

    pi = coef_expr(alg.pi)
    prod = sympy.Poly(to_expr(a) * to_expr(b), X, Y)
    folded = 0
    for (i, j), c in prod.terms():
        m = min(i, j)
        folded += c * pi ** m * X ** (i - m) * Y ** (j - m)
    folded = sympy.Poly(sympy.expand(folded), X, Y)
    terms = {}
    for (i, j), c in folded.terms():
        k = i if i else -j
        cp = sympy.Poly(c, *gens) if gens else None
        coeff = {}
        if cp is None:
            coeff[()] = Fraction(str(c))
        else:
            for e, v in cp.terms():
                coeff[e] = coeff.get(e, 0) + Fraction(str(v))
        terms[k] = ring.element(coeff)
    return alg.element(terms)


def relation_solution_space(module, r, degree):
    """Basis of all (b_0..b_r) with x/y-degrees <= ``degree`` satisfying the
    spin relations, from an exact nullspace computed by sympy.  Rings over Q."""
    A = module.algebra
    ring = module.ring
    slots = [(i, k, e) for i in range(r + 1) for k in range(-degree, degree + 1)
             for e in ring.basis]
    rows_index = {}
    columns = []
    for (i, k, e) in slots:
        el = A.element({k: ring.monomial(e)})
        col = {}
        # b_i appears as the lower index in relation i and the upper in relation i-1
        if i < r:
            for tag, val in (("px", module.p * el), ("yq", A.y * el)):
                for kk, c in val.terms.items():
                    for ee, v in c.terms.items():
                        col[(i, tag, kk, ee)] = col.get((i, tag, kk, ee), 0) + v
        if i > 0:
            for tag, val in (("px", A.x * el), ("yq", module.q * el)):
                for kk, c in val.terms.items():
                    for ee, v in c.terms.items():
                        key = (i - 1, tag, kk, ee)
                        col[key] = col.get(key, 0) - v
        for key in col:
            rows_index.setdefault(key, len(rows_index))
        columns.append(col)
    nrows = max(len(rows_index), 1)
    mat = [[SQQ(0)] * len(slots) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for key, v in col.items():
            mat[rows_index[key]][j] = SQQ(v.numerator, v.denominator)
    dm = DomainMatrix(mat, (nrows, len(slots)), SQQ)
    null = dm.nullspace().to_Matrix()
    basis = []
    for row in range(null.rows):
        comps = [dict() for _ in range(r + 1)]
        for j, (i, k, e) in enumerate(slots):
            v = null[row, j]
            if v != 0:
                comps[i].setdefault(k, {})[e] = Fraction(str(v))
        basis.append(tuple(A.element({k: ring.element(c) for k, c in comp.items()})
                           for comp in comps))
    return basis


def random_combination(module, r, basis, rng, bound=3):
    A = module.algebra
    comps = [A.zero] * (r + 1)
    for vec in basis:
        c = rng.randint(-bound, bound)
        if c:
            comps = [acc + c * v for acc, v in zip(comps, vec)]
    return SpinMapLocal(module, r, tuple(comps))
