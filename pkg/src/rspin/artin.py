"""Exact arithmetic in Artin local rings ``k[t_1..t_m]/(monomial ideal)``.

The base field ``k`` is either the rationals or a prime field.  Every ring
is finite dimensional over ``k`` and local with maximal ideal generated by
the variables, so unit / nilpotent / divisibility questions reduce to
linear algebra over ``k``.
"""
from __future__ import annotations

import ast
import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class ArtinError(ValueError):
    """Raised for malformed ring data or violated preconditions."""


class NotAUnitError(ArtinError, ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# base fields


class BaseField:
    """The rationals (``char == 0``) or the prime field ``F_char``.

    Scalars are :class:`fractions.Fraction` over Q and ``int`` in
    ``range(char)`` over F_p.
    """

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char < 0 or char == 1:
            raise ArtinError(f"invalid characteristic {char}")
        if char and any(char % d == 0 for d in range(2, math.isqrt(char) + 1)):
            raise ArtinError(f"characteristic {char} is not prime")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, BaseField) and other.char == self.char

    def __hash__(self):
        return hash(("BaseField", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def __call__(self, value):
        """Coerce ``value`` into the field."""
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError as exc:
                raise ArtinError(f"cannot read scalar {value!r}") from exc
        if isinstance(value, int):
            return Fraction(value) if self.char == 0 else value % self.char
        if isinstance(value, Fraction):
            if self.char == 0:
                return value
            den = value.denominator % self.char
            if den == 0:
                raise ArtinError(f"{value} is not defined in GF({self.char})")
            return value.numerator * pow(den, -1, self.char) % self.char
        raise ArtinError(f"coefficient {value!r} is not in {self!r}")

    def reduce(self, c):
        return c % self.char if self.char else c

    def inv(self, c):
        if c == 0:
            raise NotAUnitError("division by zero in base field")
        return pow(c, -1, self.char) if self.char else 1 / c

    def contains_inverse_of(self, n: int) -> bool:
        return self.char == 0 or n % self.char != 0

    def roots_of_unity(self, r: int) -> list:
        """All ``z`` in the field with ``z**r == 1``, sorted."""
        if r < 1:
            raise ArtinError("r must be positive")
        if self.char == 0:
            return [Fraction(-1), Fraction(1)] if r % 2 == 0 else [Fraction(1)]
        return [z for z in range(1, self.char) if pow(z, r, self.char) == 1]

    def format(self, c) -> str:
        if self.char:
            return str(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

    def to_json(self):
        return "Q" if self.char == 0 else {"Fp": self.char}

    @classmethod
    def from_json(cls, data) -> "BaseField":
        if data == "Q":
            return cls(0)
        if isinstance(data, Mapping) and set(data) == {"Fp"}:
            return cls(int(data["Fp"]))
        raise ArtinError(f"unknown field descriptor {data!r}")


QQ = BaseField(0)


def GF(p: int) -> BaseField:
    return BaseField(p)


# ---------------------------------------------------------------------------
# exact linear algebra


def solve_affine(columns: Sequence[Sequence], rhs: Sequence, field: BaseField):
    """Solve ``M x = rhs`` where ``M`` is given by its columns.

    Returns ``(particular, kernel_basis)``; ``particular`` is ``None`` when
    the system is inconsistent.  Free variables of the particular solution
    are zero.
    """
    ncols = len(columns)
    nrows = len(rhs)
    rows = [[columns[j][i] for j in range(ncols)] + [rhs[i]] for i in range(nrows)]
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        hit = next((i for i in range(prow, nrows) if rows[i][col] != 0), None)
        if hit is None:
            continue
        rows[prow], rows[hit] = rows[hit], rows[prow]
        scale = field.inv(rows[prow][col])
        rows[prow] = [field.reduce(v * scale) for v in rows[prow]]
        for i in range(nrows):
            if i != prow and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [field.reduce(a - f * b) for a, b in zip(rows[i], rows[prow])]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    if any(rows[i][ncols] != 0 for i in range(prow, nrows)):
        return None, []
    zero = field(0)
    particular = [zero] * ncols
    for i, col in enumerate(pivots):
        particular[col] = rows[i][ncols]
    free = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    for fcol in free:
        vec = [zero] * ncols
        vec[fcol] = field(1)
        for i, col in enumerate(pivots):
            vec[col] = field.reduce(-rows[i][fcol])
        kernel.append(vec)
    return particular, kernel


# ---------------------------------------------------------------------------
# rings


class ArtinRing:
    """``field[vars]/(monomials)`` with a finite monomial basis.

    >>> R = ArtinRing(["t"], [[3]])
    >>> t = R.gen("t")
    >>> t**2 * t**2
    0
    """

    def __init__(self, variables: Sequence[str], ideal: Iterable[Sequence[int]],
                 field: BaseField = QQ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ArtinError("duplicate variable names")
        m = len(self.variables)
        gens = []
        for g in ideal:
            g = tuple(int(e) for e in g)
            if len(g) != m or min(g, default=0) < 0:
                raise ArtinError(f"bad ideal generator {g!r} for {m} variables")
            if sum(g) == 0:
                raise ArtinError("ideal contains 1; the quotient is the zero ring")
            gens.append(g)
        self.field = field
        # keep minimal generators so equal ideals give equal rings
        gens = set(gens)
        self.ideal = tuple(sorted(g for g in gens if not any(
            h != g and all(a >= b for a, b in zip(g, h)) for h in gens)))
        bounds = []
        for k in range(m):
            pure = [g[k] for g in self.ideal if all(g[j] == 0 for j in range(m) if j != k)]
            if not pure:
                raise ArtinError(
                    f"ideal has no pure power of {self.variables[k]}; quotient is infinite")
            bounds.append(min(pure))
        mons = [e for e in itertools.product(*(range(b) for b in bounds))
                if not any(all(e[j] >= g[j] for j in range(m)) for g in self.ideal)]
        mons.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
        self.basis: tuple[tuple[int, ...], ...] = tuple(mons)
        self._index = {e: i for i, e in enumerate(self.basis)}
        self._unit_exp = (0,) * m

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.variables, self.ideal, self.field)

    def __eq__(self, other):
        return isinstance(other, ArtinRing) and other._key() == self._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if not self.variables:
            return repr(self.field)
        mons = [_format_monomial(self.variables, g) for g in self.ideal]
        return f"{self.field!r}[{','.join(self.variables)}]/({', '.join(mons)})"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def nilpotency_bound(self) -> int:
        """An ``N`` with ``m**N == 0``."""
        return max(sum(e) for e in self.basis) + 1

    # -- constructors ------------------------------------------------------

    def element(self, terms: Mapping[Sequence[int], object] | None = None) -> "ArtinElement":
        """Build an element from ``{exponent vector: coefficient}``, reducing
        modulo the ideal."""
        out: dict = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.variables):
                raise ArtinError(f"exponent {exp!r} has wrong length")
            c = self.field(c)
            if c == 0 or exp not in self._index:
                continue
            out[exp] = self.field.reduce(out.get(exp, 0) + c)
        return ArtinElement._make(self, {e: c for e, c in out.items() if c != 0})

    def scalar(self, c) -> "ArtinElement":
        return self.element({self._unit_exp: c})

    def __call__(self, value) -> "ArtinElement":
        if isinstance(value, ArtinElement):
            if value.ring != self:
                raise ArtinError("element belongs to a different ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Mapping):
            return self.element(value)
        return self.scalar(value)

    @property
    def zero(self) -> "ArtinElement":
        return ArtinElement._make(self, {})

    @property
    def one(self) -> "ArtinElement":
        return self.scalar(1)

    def gen(self, name: str) -> "ArtinElement":
        try:
            k = self.variables.index(name)
        except ValueError:
            raise ArtinError(f"unknown variable {name!r}") from None
        exp = [0] * len(self.variables)
        exp[k] = 1
        return self.element({tuple(exp): 1})

    def gens(self) -> tuple["ArtinElement", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exp: Sequence[int]) -> "ArtinElement":
        return self.element({tuple(exp): 1})

    def from_vector(self, vec: Sequence) -> "ArtinElement":
        return self.element({e: c for e, c in zip(self.basis, vec)})

    def parse(self, text: str) -> "ArtinElement":
        """Evaluate a polynomial expression such as ``"(1+t)*(1-t)"``.

        Allowed: the ring variables, integer literals, ``+ - * /`` and
        ``**`` (or ``^``) with integer exponents.  ``/`` divides by units only.
        """
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ArtinError(f"cannot parse {text!r}") from exc
        return self._eval(tree.body)

    def _eval(self, node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ArtinError(f"coefficient {node.value!r} is not in {self.field!r}")
            return self.scalar(node.value)
        if isinstance(node, ast.Name):
            return self.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = self._eval(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ArtinError("exponents must be integer literals")
                return self._eval(node.left) ** (sign * exp.value)
            left, right = self._eval(node.left), self._eval(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ArtinError(f"unsupported syntax in expression: {ast.dump(node)}")

    def random_element(self, rng, *, unit: bool | None = None, bound: int = 3) -> "ArtinElement":
        """Random element with small coefficients; ``unit`` forces the
        constant term to be nonzero (True) or zero (False)."""
        terms = {}
        for e in self.basis:
            terms[e] = rng.randint(-bound, bound)
        if unit is not None:
            c = 0
            if unit:
                while self.field(c) == 0:
                    c = rng.randint(-bound, bound)
            terms[self._unit_exp] = c
        return self.element(terms)

    # -- structure ---------------------------------------------------------

    def quotient(self, extra: Iterable[Sequence[int]]) -> "ArtinRing":
        """The ring with additional monomial generators in the ideal."""
        return ArtinRing(self.variables, list(self.ideal) + [tuple(g) for g in extra], self.field)

    def reduced(self) -> "ArtinRing":
        """The reduction ``R/nilradical``, i.e. the residue field."""
        return ArtinRing(self.variables, [tuple(int(i == k) for i in range(len(self.variables)))
                                          for k in range(len(self.variables))], self.field)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "vars": list(self.variables),
                "ideal": [list(g) for g in self.ideal]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ArtinRing":
        return cls(data["vars"], data["ideal"], BaseField.from_json(data.get("field", "Q")))

    def element_from_json(self, data) -> "ArtinElement":
        """Accepts a ``{"i,j": coeff}`` map, a scalar, or an expression string."""
        if isinstance(data, Mapping):
            terms = {}
            for key, c in data.items():
                exp = tuple(int(s) for s in str(key).split(",")) if str(key) else ()
                terms[exp] = c
            return self.element(terms)
        if isinstance(data, str):
            try:
                return self.scalar(Fraction(data))
            except (ValueError, ArtinError):
                return self.parse(data)
        return self.scalar(data)


def _format_monomial(variables, exp) -> str:
    parts = []
    for v, e in zip(variables, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# elements


class ArtinElement:
    """Immutable element of an :class:`ArtinRing`."""

    __slots__ = ("ring", "_terms", "_hash")

    @classmethod
    def _make(cls, ring: ArtinRing, terms: dict) -> "ArtinElement":
        obj = object.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, exp: Sequence[int]):
        return self._terms.get(tuple(exp), self.ring.field(0))

    @property
    def constant_term(self):
        return self.coefficient(self.ring._unit_exp)

    def vector(self) -> list:
        zero = self.ring.field(0)
        return [self._terms.get(e, zero) for e in self.ring.basis]

    # -- predicates --------------------------------------------------------

    def is_unit(self) -> bool:
        return self.constant_term != 0

    def is_nilpotent(self) -> bool:
        return self.constant_term == 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ArtinElement):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self._terms == self.ring.scalar(other)._terms
        except ArtinError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "ArtinElement":
        if isinstance(other, ArtinElement):
            if other.ring != self.ring:
                raise ArtinError("ring mismatch")
            return other
        return self.ring.scalar(other)

    @staticmethod
    def _foreign(other) -> bool:
        # leave room for richer types (nodal series) to take over
        return not isinstance(other, (ArtinElement, int, Fraction, str))

    def __add__(self, other):
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        red = self.ring.field.reduce
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ArtinElement._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return ArtinElement._make(self.ring, {e: red(-c) for e, c in self._terms.items()})

    def __sub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ArtinElement):
            try:
                other = self.ring.scalar(other)
            except ArtinError:
                return NotImplemented
        elif other.ring != self.ring:
            raise ArtinError("ring mismatch")
        index = self.ring._index
        red = self.ring.field.reduce
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in index:
                    out[e] = red(out.get(e, 0) + c1 * c2)
        return ArtinElement._make(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if self._foreign(other):
            return NotImplemented
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def inverse(self) -> "ArtinElement":
        """Inverse of a unit via the geometric series in its nilpotent part."""
        c0 = self.constant_term
        if c0 == 0:
            raise NotAUnitError(f"{self} is not a unit")
        inv0 = self.ring.field.inv(c0)
        nil = self * inv0 - 1  # nilpotent
        result, power = self.ring.one, self.ring.one
        for _ in range(self.ring.nilpotency_bound):
            power = -power * nil
            if not power:
                break
            result = result + power
        return result * inv0

    def map_to(self, ring: ArtinRing) -> "ArtinElement":
        """Image under the quotient map to a ring on the same variables."""
        if ring.variables != self.ring.variables or ring.field != self.ring.field:
            raise ArtinError("target ring is not a quotient on the same variables")
        return ring.element(self._terms)

    # -- display -----------------------------------------------------------

    def __repr__(self):
        if not self._terms:
            return "0"
        field = self.ring.field
        out = ""
        for e in self.ring.basis:
            if e not in self._terms:
                continue
            c = self._terms[e]
            neg = field.char == 0 and c < 0
            mag = field.format(-c if neg else c)
            mon = _format_monomial(self.ring.variables, e)
            body = mag if mon == "1" else (mon if mag == "1" else f"{mag}*{mon}")
            if not out:
                out = f"-{body}" if neg else body
            else:
                out += f" - {body}" if neg else f" + {body}"
        return out

    def to_json(self) -> dict:
        fmt = self.ring.field.format
        return {",".join(map(str, e)): fmt(self._terms[e]) for e in self.ring.basis
                if e in self._terms}


# ---------------------------------------------------------------------------
# the operations


def normalize(ring: ArtinRing, expression) -> ArtinElement:
    """Reduce a raw expression (string, term map or scalar) into ``ring``."""
    return ring(expression)


def is_unit(a: ArtinElement) -> bool:
    return a.is_unit()


def is_nilpotent(a: ArtinElement) -> bool:
    return a.is_nilpotent()


def invert(a: ArtinElement) -> ArtinElement:
    return a.inverse()


def rth_root_lift(gamma: ArtinElement, r: int, root0) -> ArtinElement:
    """The unique ``lam`` with ``lam**r == gamma`` and constant term ``root0``.

    Each step replaces ``lam`` by ``lam - err / (r * lam**(r-1))`` where
    ``err = lam**r - gamma``; the error ideal squares at every step.
    """
    ring = gamma.ring
    field = ring.field
    if r < 1:
        raise ArtinError("r must be positive")
    if not field.contains_inverse_of(r):
        raise ArtinError(f"r={r} is not invertible in {field!r}")
    root0 = field(root0)
    if field.reduce(root0 ** r - gamma.constant_term) != 0:
        raise ArtinError(f"{field.format(root0)}^{r} does not match the constant term of {gamma}")
    if not gamma.is_unit():
        raise ArtinError("gamma must be a unit")
    lam = ring.scalar(root0)
    for _ in range(ring.nilpotency_bound + 1):
        err = lam ** r - gamma
        if not err:
            return lam
        lam = lam - err / (r * lam ** (r - 1))
    raise AssertionError("root lifting did not converge")  # pragma: no cover


def _mult_columns(a: ArtinElement) -> list[list]:
    ring = a.ring
    return [(a * ring.monomial(e)).vector() for e in ring.basis]


def solve_multiplier(pairs: Sequence[tuple[ArtinElement, ArtinElement]]):
    """All ``x`` with ``x*a == b`` for every ``(a, b)`` in ``pairs``.

    Returns ``(particular, kernel)`` as ring elements, or ``(None, [])``.
    """
    ring = pairs[0][0].ring
    columns = [[] for _ in ring.basis]
    rhs: list = []
    for a, b in pairs:
        if a.ring != ring or b.ring != ring:
            raise ArtinError("ring mismatch")
        for j, col in enumerate(_mult_columns(a)):
            columns[j].extend(col)
        rhs.extend(b.vector())
    part, kernel = solve_affine(columns, rhs, ring.field)
    if part is None:
        return None, []
    return ring.from_vector(part), [ring.from_vector(k) for k in kernel]


def unit_multiplier(pairs: Sequence[tuple[ArtinElement, ArtinElement]]) -> ArtinElement | None:
    """A unit ``x`` with ``x*a == b`` for all pairs, or ``None``.

    ``1`` is returned whenever it is a solution.
    """
    if all(a == b for a, b in pairs):
        return pairs[0][0].ring.one
    part, kernel = solve_multiplier(pairs)
    if part is None:
        return None
    if part.is_unit():
        return part
    for k in kernel:
        if k.is_unit():
            return part + k
    return None


def associate_solve(a: ArtinElement, b: ArtinElement) -> ArtinElement | None:
    """A unit ``lam`` with ``b == lam * a``, or ``None``."""
    return unit_multiplier([(a, b)])


def truncated_polynomial_ring(var: str = "t", n: int = 4, field: BaseField = QQ) -> ArtinRing:
    """``field[var]/(var**n)``."""
    return ArtinRing([var], [[n]], field)
