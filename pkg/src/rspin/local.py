"""Local models at a node: ``A = R[x,y]/(xy - pi)`` and the modules ``E(p,q)``.

Elements of ``A`` are stored in the canonical form ``c + sum a_n x^n +
sum b_m y^m`` as a map from a signed exponent ``k`` to an
:class:`~rspin.artin.ArtinElement`: ``k > 0`` is ``x^k``, ``k < 0`` is
``y^-k`` and ``k == 0`` is the constant.  With this convention
``coefficient(i, k)`` of a spin map is the usual ``b_{i,k}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .artin import ArtinElement, ArtinError, ArtinRing, unit_multiplier


class LocalModelError(ArtinError):
    """A local datum violates the requirements of an operation."""


class NodalAlgebra:
    """``R[x,y]/(xy - pi)`` over an Artin ring ``R``.

    ``degree_cap`` truncates x- and y-exponents above the cap; ``None``
    (the default) keeps every term, which is exact for polynomial input.
    """

    def __init__(self, ring: ArtinRing, pi, degree_cap: int | None = None):
        self.ring = ring
        self.pi = ring(pi)
        if self.pi.is_unit():
            raise LocalModelError("pi must lie in the maximal ideal")
        self.degree_cap = degree_cap

    def __eq__(self, other):
        return (isinstance(other, NodalAlgebra) and self.ring == other.ring
                and self.pi == other.pi and self.degree_cap == other.degree_cap)

    def __hash__(self):
        return hash((self.ring, self.pi, self.degree_cap))

    def __repr__(self):
        return f"{self.ring!r}[x,y]/(xy - ({self.pi!r}))"

    def element(self, terms: Mapping[int, object] | None = None) -> "NodalElement":
        """From a signed-exponent map ``{k: coefficient}``."""
        out = {}
        for k, c in (terms or {}).items():
            k = int(k)
            if self.degree_cap is not None and abs(k) > self.degree_cap:
                continue
            c = self.ring(c)
            if c:
                out[k] = out[k] + c if k in out else c
        return NodalElement(self, {k: c for k, c in out.items() if c})

    def __call__(self, value) -> "NodalElement":
        if isinstance(value, NodalElement):
            if value.algebra != self:
                raise LocalModelError("element belongs to a different algebra")
            return value
        return self.element({0: value})

    @property
    def x(self) -> "NodalElement":
        return self.element({1: 1})

    @property
    def y(self) -> "NodalElement":
        return self.element({-1: 1})

    @property
    def zero(self) -> "NodalElement":
        return NodalElement(self, {})

    @property
    def one(self) -> "NodalElement":
        return self.element({0: 1})

    def x_power(self, n: int) -> "NodalElement":
        return self.element({n: 1})

    def y_power(self, m: int) -> "NodalElement":
        return self.element({-m: 1})

    def from_json(self, data: Mapping) -> "NodalElement":
        """``{"const": elt, "x": {"1": elt, ...}, "y": {"1": elt, ...}}``."""
        unknown = set(data) - {"const", "x", "y"}
        if unknown:
            raise LocalModelError(f"unknown keys {sorted(unknown)} in nodal element")
        terms: dict[int, ArtinElement] = {}
        if "const" in data:
            terms[0] = self.ring.element_from_json(data["const"])
        for key, sign in (("x", 1), ("y", -1)):
            for n, c in data.get(key, {}).items():
                n = int(n)
                if n < 1:
                    raise LocalModelError(f"{key}-exponents start at 1, got {n}")
                terms[sign * n] = self.ring.element_from_json(c)
        return self.element(terms)


class NodalElement:
    """Immutable element of a :class:`NodalAlgebra` in canonical form."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: NodalAlgebra, terms: dict):
        self.algebra = algebra
        self._terms = terms

    # -- access ------------------------------------------------------------

    def coefficient(self, k: int) -> ArtinElement:
        return self._terms.get(k, self.algebra.ring.zero)

    @property
    def const(self) -> ArtinElement:
        return self.coefficient(0)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def x_part(self) -> dict:
        return {k: c for k, c in self._terms.items() if k > 0}

    def y_part(self) -> dict:
        return {-k: c for k, c in self._terms.items() if k < 0}

    def is_x_only(self) -> bool:
        return all(k >= 0 for k in self._terms)

    def is_y_only(self) -> bool:
        return all(k <= 0 for k in self._terms)

    def max_degree(self) -> int:
        return max((abs(k) for k in self._terms), default=0)

    def residue(self) -> dict[int, object]:
        """Signed-exponent map of the reduction modulo the maximal ideal."""
        out = {}
        for k, c in self._terms.items():
            if c.constant_term != 0:
                out[k] = c.constant_term
        return out

    def is_unit(self) -> bool:
        return self.const.is_unit()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, NodalElement):
            return self.algebra == other.algebra and self._terms == other._terms
        try:
            return self == self.algebra(other)
        except ArtinError:
            return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self._terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "NodalElement":
        return self.algebra(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return NodalElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return NodalElement(self.algebra, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except ArtinError:
            return NotImplemented
        alg = self.algebra
        pi_powers = [alg.ring.one]
        out: dict[int, ArtinElement] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                c = c1 * c2
                if k1 * k2 < 0:
                    # x^a y^b = pi^min(a,b) x^(a-b)
                    fold = min(abs(k1), abs(k2))
                    while len(pi_powers) <= fold:
                        pi_powers.append(pi_powers[-1] * alg.pi)
                    c = c * pi_powers[fold]
                if not c:
                    continue
                k = k1 + k2
                if alg.degree_cap is not None and abs(k) > alg.degree_cap:
                    continue
                out[k] = out[k] + c if k in out else c
        return NodalElement(alg, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = self.algebra.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- transport ---------------------------------------------------------

    def map_to(self, algebra: NodalAlgebra) -> "NodalElement":
        """Image in the algebra over a quotient of the coefficient ring."""
        if algebra.pi != self.algebra.pi.map_to(algebra.ring):
            raise LocalModelError("pi does not map to the target algebra's pi")
        return algebra.element({k: c.map_to(algebra.ring) for k, c in self._terms.items()})

    def swap_branches(self, algebra: NodalAlgebra | None = None) -> "NodalElement":
        """Exchange ``x`` and ``y``."""
        algebra = algebra or self.algebra
        return algebra.element({-k: c for k, c in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda k: (abs(k), -k)):
            c = self._terms[k]
            mon = "" if k == 0 else ("x" if k > 0 else "y") + (f"^{abs(k)}" if abs(k) > 1 else "")
            cs = repr(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            else:
                parts.append(f"({cs})*{mon}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        out: dict = {}
        if 0 in self._terms:
            out["const"] = self._terms[0].to_json()
        xs = {str(k): c.to_json() for k, c in sorted(self._terms.items()) if k > 0}
        ys = {str(-k): c.to_json() for k, c in sorted(self._terms.items(), reverse=True) if k < 0}
        if xs:
            out["x"] = xs
        if ys:
            out["y"] = ys
        return out


def nodal_mul(a: NodalElement, b: NodalElement) -> NodalElement:
    if a.algebra != b.algebra:
        raise LocalModelError("algebra mismatch")
    return a * b


# ---------------------------------------------------------------------------
# the modules E(p, q)


class EpqModule:
    """``E(p,q)``: the image of ``[[x, p], [q, y]]`` acting on ``A^2``.

    Elements are stored as canonical pairs ``(f, g)`` with ``f`` in
    ``R[x]`` and ``g`` in ``R[y]``.
    """

    def __init__(self, ring: ArtinRing, p, q, degree_cap: int | None = None):
        self.p = ring(p)
        self.q = ring(q)
        self.algebra = NodalAlgebra(ring, self.p * self.q, degree_cap)

    @classmethod
    def over(cls, algebra: NodalAlgebra, p, q) -> "EpqModule":
        p, q = algebra.ring(p), algebra.ring(q)
        if p * q != algebra.pi:
            raise LocalModelError(f"p*q = {p * q} differs from pi = {algebra.pi}")
        return cls(algebra.ring, p, q, algebra.degree_cap)

    @property
    def ring(self) -> ArtinRing:
        return self.algebra.ring

    @property
    def pi(self) -> ArtinElement:
        return self.algebra.pi

    def is_free(self) -> bool:
        return self.p.is_unit() or self.q.is_unit()

    def __eq__(self, other):
        return (isinstance(other, EpqModule) and self.algebra == other.algebra
                and self.p == other.p and self.q == other.q)

    def __hash__(self):
        return hash((self.algebra, self.p, self.q))

    def __repr__(self):
        return f"E({self.p!r}, {self.q!r}) over {self.ring!r}"

    def alpha(self, f: NodalElement, g: NodalElement) -> tuple[NodalElement, NodalElement]:
        """``(x f + p g, q f + y g)``."""
        A = self.algebra
        f, g = A(f), A(g)
        return A.x * f + self.p * g, self.q * f + A.y * g

    def membership(self, vec: Sequence[NodalElement]):
        """The canonical pair ``(f, g)`` with ``alpha(f, g) == vec``, or ``None``."""
        A = self.algebra
        v1, v2 = A(vec[0]), A(vec[1])
        f = A.element({n - 1: c for n, c in v1.x_part().items()})
        g = A.element({-(m - 1): c for m, c in v2.y_part().items()})
        if self.alpha(f, g) != (v1, v2):
            return None
        return f, g

    def swap_branches(self) -> "EpqModule":
        return EpqModule(self.ring, self.q, self.p, self.algebra.degree_cap)


def epq_membership(module: EpqModule, vec: Sequence[NodalElement]):
    return module.membership(vec)


# ---------------------------------------------------------------------------
# spin maps


@dataclass(frozen=True)
class SpinMapLocal:
    """The lift ``(b_0, ..., b_r)`` of ``b: E(p,q)^{(x)r} -> A``."""

    module: EpqModule
    r: int
    components: tuple

    def __post_init__(self):
        if self.r < 1:
            raise LocalModelError("r must be positive")
        comps = tuple(self.module.algebra(b) for b in self.components)
        if len(comps) != self.r + 1:
            raise LocalModelError(f"expected {self.r + 1} components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @property
    def algebra(self) -> NodalAlgebra:
        return self.module.algebra

    def coefficient(self, i: int, k: int) -> ArtinElement:
        """``b_{i,k}``: the ``x^k`` (``k >= 0``) or ``y^-k`` coefficient of ``b_i``."""
        return self.components[i].coefficient(k)

    def twist(self) -> tuple[int, int]:
        """``(u, v)``: the x-order of the reduction of ``b_0`` and the y-order
        of the reduction of ``b_r``."""
        b0 = self.components[0].residue()
        br = self.components[-1].residue()
        if not b0 or not br:
            raise LocalModelError("b_0 and b_r must be nonzero modulo the maximal ideal")
        if any(k <= 0 for k in b0):
            raise LocalModelError("b_0 mod m is not of the form x^u * unit with u >= 1")
        if any(k >= 0 for k in br):
            raise LocalModelError("b_r mod m is not of the form y^v * unit with v >= 1")
        for i, b in enumerate(self.components[1:-1], start=1):
            if b.residue():
                raise LocalModelError(f"b_{i} is nonzero modulo the maximal ideal")
        return min(b0), -max(br)

    def w(self) -> ArtinElement:
        u, v = self.twist()
        return self.coefficient(self.r, -v) / self.coefficient(0, u)

    def map_to(self, ring: ArtinRing) -> "SpinMapLocal":
        """Reduce to a quotient of the coefficient ring."""
        module = EpqModule(ring, self.module.p.map_to(ring), self.module.q.map_to(ring),
                           self.algebra.degree_cap)
        return SpinMapLocal(module, self.r,
                            tuple(b.map_to(module.algebra) for b in self.components))

    def swap_branches(self) -> "SpinMapLocal":
        """Exchange the branches: ``x <-> y``, ``p <-> q`` and ``b_i <-> b_{r-i}``."""
        module = self.module.swap_branches()
        comps = tuple(b.swap_branches(module.algebra) for b in reversed(self.components))
        return SpinMapLocal(module, self.r, comps)

    def to_json(self) -> dict:
        return {"ring": self.module.ring.to_json(), "p": self.module.p.to_json(),
                "q": self.module.q.to_json(), "r": self.r,
                "components": [b.to_json() for b in self.components]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SpinMapLocal":
        ring = ArtinRing.from_json(data["ring"])
        module = EpqModule(ring, ring.element_from_json(data["p"]),
                           ring.element_from_json(data["q"]), data.get("degree_cap"))
        comps = tuple(module.algebra.from_json(b) for b in data["components"])
        return cls(module, int(data["r"]), comps)


def make_spin_map(module: EpqModule, r: int, u: int, v: int, w=1, a=1) -> SpinMapLocal:
    """The induced map ``a * (x^u, p x^(u-1), ..., p^u, w q^(v-1) y, ..., w y^v)``.

    ``a`` may be a unit of ``R`` or any unit of ``A``.
    """
    if u < 1 or v < 1:
        raise LocalModelError("u and v must both be at least one")
    if u + v != r:
        raise LocalModelError(f"u + v = {u + v} differs from r = {r}")
    A = module.algebra
    w = module.ring(w)
    if not w.is_unit():
        raise LocalModelError("w must be a unit")
    if module.p ** u != w * module.q ** v:
        raise LocalModelError("p^u != w q^v")
    a = A(a)
    if not a.is_unit():
        raise LocalModelError("a must be a unit")
    comps = []
    for i in range(r + 1):
        if i <= u:
            comps.append(a * (module.p ** i) * A.x_power(u - i))
        else:
            comps.append(a * (w * module.q ** (r - i)) * A.y_power(i - u))
    return SpinMapLocal(module, r, tuple(comps))


def check_spin_relations(b: SpinMapLocal) -> tuple[bool, list[int]]:
    """Test ``p b_i == x b_{i+1}`` and ``y b_i == q b_{i+1}`` for ``0 <= i < r``."""
    A = b.algebra
    p, q = b.module.p, b.module.q
    failing = []
    for i in range(b.r):
        lo, hi = b.components[i], b.components[i + 1]
        if p * lo != A.x * hi or A.y * lo != q * hi:
            failing.append(i)
    return not failing, failing


def cokernel_length(b: SpinMapLocal) -> int:
    """Length of the cokernel of ``b`` on the special fibre, ``u + v - 1``."""
    u, v = b.twist()
    return u + v - 1


def is_good_cokernel(b: SpinMapLocal, r: int | None = None) -> bool:
    r = b.r if r is None else r
    return cokernel_length(b) == r - 1


@dataclass(frozen=True)
class SigmaReport:
    sigmas: tuple  # sigma_1 .. sigma_{r-1}
    classification: str  # "spin" | "quasi-spin" | "not-quasi-spin"
    u: int
    v: int
    w: ArtinElement

    def to_json(self) -> dict:
        return {"sigma": [s.to_json() for s in self.sigmas],
                "classification": self.classification, "u": self.u, "v": self.v,
                "w": self.w.to_json()}


def extract_sigma(b: SpinMapLocal) -> SigmaReport:
    """Deviations of ``b`` from an induced map.

    ``sigma_i = b_{0,i} - pi^(u-i) b_{r,i-r} / w`` for ``0 < i < u`` and
    ``sigma_i = b_{r,i-r} - w pi^(i-u) b_{0,i}`` for ``u < i < r``;
    ``sigma_u = 0``.
    """
    ok, failing = check_spin_relations(b)
    if not ok:
        raise LocalModelError(f"spin relations fail at indices {failing}")
    u, v = b.twist()
    r = b.r
    pi = b.module.pi
    w = b.w()
    sigmas = []
    for i in range(1, r):
        if i < u:
            s = b.coefficient(0, i) - pi ** (u - i) * b.coefficient(r, i - r) / w
        elif i > u:
            s = b.coefficient(r, i - r) - w * pi ** (i - u) * b.coefficient(0, i)
        else:
            s = b.module.ring.zero
        sigmas.append(s)
    if u + v != r or any(s.is_unit() for s in sigmas):
        kind = "not-quasi-spin"
    elif any(sigmas):
        kind = "quasi-spin"
    else:
        kind = "spin"
    return SigmaReport(tuple(sigmas), kind, u, v, w)


# ---------------------------------------------------------------------------
# isomorphisms and homomorphisms


def epq_isomorphic(first: EpqModule, second: EpqModule) -> ArtinElement | None:
    """A unit ``mu`` with ``p' = mu p`` and ``q' = q / mu``, or ``None``.

    Both equations are linear in ``mu`` (the second as ``mu q' = q``) and
    are solved jointly.
    """
    if first.ring != second.ring:
        raise LocalModelError("modules live over different rings")
    if first.pi != second.pi:
        raise LocalModelError(f"pi mismatch: {first.pi} vs {second.pi}")
    if first.is_free() or second.is_free():
        raise LocalModelError("p and q must lie in the maximal ideal")
    return unit_multiplier([(first.p, second.p), (second.q, first.q)])


@dataclass(frozen=True)
class ModuleHom:
    """A homomorphism ``E(p,q) -> E(p',q')`` lifted to the matrix
    ``[[phi_plus, psi_plus], [psi_minus, phi_minus]]``."""

    source: EpqModule
    target: EpqModule
    phi_plus: NodalElement
    phi_minus: NodalElement
    psi_plus: NodalElement
    psi_minus: NodalElement

    def compose(self, after: "ModuleHom") -> "ModuleHom | None":
        """``after`` applied after ``self``, as the product of the diagonal parts."""
        if self.target != after.source:
            raise LocalModelError("homomorphisms do not chain")
        return hom_complete(self.phi_plus * after.phi_plus, self.phi_minus * after.phi_minus,
                            self.source, after.target)

    def is_identity(self) -> bool:
        return (self.phi_plus == 1 and self.phi_minus == 1
                and not self.psi_plus and not self.psi_minus)


def hom_complete(phi_plus, phi_minus, source: EpqModule, target: EpqModule) -> ModuleHom | None:
    """Fill in ``psi_plus = p (phi_plus - phi_plus(0)) / x`` and the mirror
    ``psi_minus``; ``None`` unless ``p' phi_-(0) = phi_+(0) p`` and
    ``q' phi_+(0) = phi_-(0) q``."""
    A = source.algebra
    if target.ring != source.ring:
        raise LocalModelError("modules live over different rings")
    phi_plus, phi_minus = A(phi_plus), A(phi_minus)
    if not phi_plus.is_x_only():
        raise LocalModelError("phi_plus must be a series in x")
    if not phi_minus.is_y_only():
        raise LocalModelError("phi_minus must be a series in y")
    c_plus, c_minus = phi_plus.const, phi_minus.const
    if target.p * c_minus != c_plus * source.p or target.q * c_plus != c_minus * source.q:
        return None
    psi_plus = source.p * A.element({n - 1: c for n, c in phi_plus.x_part().items()})
    psi_minus = source.q * A.element({-(m - 1): c for m, c in phi_minus.y_part().items()})
    return ModuleHom(source, target, phi_plus, phi_minus, psi_plus, psi_minus)


@dataclass(frozen=True)
class AutGroup:
    """Automorphisms of a local quasi-spin structure.

    ``kind`` is ``"U_r"`` (diagonal ``zeta``) when ``p`` or ``q`` is nonzero
    and ``"U_r x U_r"`` when ``p = q = 0``.
    """

    kind: str
    r: int
    roots: tuple
    order: int

    def elements(self) -> list[tuple]:
        if self.kind == "U_r":
            return [(z, z) for z in self.roots]
        return [(z1, z2) for z1 in self.roots for z2 in self.roots]

    def to_json(self, field) -> dict:
        return {"kind": self.kind, "r": self.r, "order": self.order,
                "roots": [field.format(z) for z in self.roots]}


def local_aut_group(b: SpinMapLocal) -> AutGroup:
    report = extract_sigma(b)
    if report.classification == "not-quasi-spin":
        raise LocalModelError("not a quasi-spin structure")
    roots = tuple(b.module.ring.field.roots_of_unity(b.r))
    if b.module.p or b.module.q:
        return AutGroup("U_r", b.r, roots, len(roots))
    return AutGroup("U_r x U_r", b.r, roots, len(roots) ** 2)
