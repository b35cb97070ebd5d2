"""Exact arithmetic in GF(p) and GF(p^s) plus univariate polynomial tools.

Fields are represented as towers: a prime field GF(p), optionally extended
by an irreducible modulus.  Internal scalar extensions build further tower
levels on top of an existing field, which keeps the base-field embedding
trivial (constants stay constants).  Elements carry a reference to their
field and never coerce across fields.

The polynomial layer provides the Euclidean gcd, characteristic-p
squarefree decomposition (with p-th root extraction when the derivative
vanishes; valid because finite fields are perfect) and distinct-root
counting, which is what the branch oracle consumes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import (
    CompositeCharacteristic,
    FieldMismatch,
    FieldTooLarge,
    ReducibleModulus,
    ZeroPolynomial,
)

MAX_PRIME = 2**31
MAX_EXTENSION_DEGREE = 8

# Dense table-driven linear algebra only works for small fields; extensions
# beyond this order are rejected (prime fields of any size are fine).
MAX_TABLE_ORDER = 4096


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Common interface of PrimeField and ExtensionField."""

    p: int
    degree: int  # degree over GF(p)
    order: int

    def zero(self) -> "FieldElement":
        raise NotImplementedError

    def one(self) -> "FieldElement":
        raise NotImplementedError

    def from_int(self, k: int) -> "FieldElement":
        """Embed an integer as a constant (image of k mod p)."""
        raise NotImplementedError

    def elements(self) -> Iterator["FieldElement"]:
        """Iterate all field elements in a fixed order (small fields only)."""
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError


class PrimeField(Field):
    """GF(p) with integer representatives in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if p > MAX_PRIME:
            raise ValueError(f"characteristic cap exceeded: {p} > {MAX_PRIME}")
        self.p = p
        self.degree = 1
        self.order = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1 % self.p)

    def from_int(self, k):
        return FieldElement(self, k % self.p)

    def elements(self):
        for v in range(self.p):
            yield FieldElement(self, v)

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(a, self.p - 2, self.p)


class ExtensionField(Field):
    """Degree-d extension of an existing field by an irreducible modulus.

    Elements are coefficient tuples of length d over the base field,
    lowest degree first.
    """

    def __init__(self, base: Field, modulus: "UniPoly", check: bool = True):
        if modulus.field != base:
            raise FieldMismatch("modulus must be a polynomial over the base field")
        if modulus.degree < 2:
            raise ValueError("extension modulus must have degree >= 2")
        modulus = modulus.monic()
        self.base = base
        self.modulus = modulus
        self.p = base.p
        self.s = modulus.degree
        self.degree = base.degree * self.s
        if self.degree > MAX_EXTENSION_DEGREE:
            raise ValueError(
                f"extension degree cap exceeded: {self.degree} > {MAX_EXTENSION_DEGREE}"
            )
        self.order = self.p**self.degree
        if self.order > MAX_TABLE_ORDER:
            raise FieldTooLarge(f"extension field of order {self.order} not supported")
        if check and not is_irreducible(modulus):
            raise ReducibleModulus(f"modulus {modulus} is reducible")
        # -modulus coefficients below the leading term, used for reduction
        self._red = tuple(base._neg(c.value) for c in modulus.coefficients[:-1])

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus.coefficients == self.modulus.coefficients
        )

    def __hash__(self):
        return hash(("ExtensionField", self.base, tuple(c.value for c in self.modulus.coefficients)))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def zero(self):
        return FieldElement(self, (self.base.zero().value,) * self.s)

    def one(self):
        return FieldElement(self, (self.base.one().value,) + (self.base.zero().value,) * (self.s - 1))

    def from_int(self, k):
        return FieldElement(
            self, (self.base.from_int(k).value,) + (self.base.zero().value,) * (self.s - 1)
        )

    def embed(self, c: "FieldElement") -> "FieldElement":
        """Embed a base-field element as a constant of this extension."""
        if c.field != self.base:
            raise FieldMismatch("embed expects an element of the base field")
        return FieldElement(self, (c.value,) + (self.base.zero().value,) * (self.s - 1))

    def generator(self) -> "FieldElement":
        """The residue of t, a root of the modulus."""
        z = self.base.zero().value
        o = self.base.one().value
        return FieldElement(self, (z, o) + (z,) * (self.s - 2))

    def elements(self):
        def rec(i):
            if i == self.s:
                yield ()
                return
            for rest in rec(i + 1):
                for c in self.base.elements():
                    yield (c.value,) + rest

        for tup in rec(0):
            yield FieldElement(self, tup)

    def _add(self, a, b):
        base = self.base
        return tuple(base._add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        base = self.base
        return tuple(base._neg(x) for x in a)

    def _mul(self, a, b):
        base = self.base
        s = self.s
        zero = base.zero().value
        prod = [zero] * (2 * s - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                prod[i + j] = base._add(prod[i + j], base._mul(x, y))
        # reduce modulo the (monic) modulus
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k]
            if c == zero:
                continue
            prod[k] = zero
            for j, r in enumerate(self._red):
                prod[k - s + j] = base._add(prod[k - s + j], base._mul(c, r))
        return tuple(prod[:s])

    def _inv(self, a):
        # extended Euclid on coefficient tuples against the modulus
        if all(x == self.base.zero().value for x in a):
            raise ZeroDivisionError("inverse of zero field element")
        f = UniPoly(self.base, tuple(FieldElement(self.base, x) for x in a))
        g = self.modulus
        r0, r1 = g, f
        t0, t1 = UniPoly.zero(self.base), UniPoly.one(self.base)
        while r1.degree > 0:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        # r1 is a nonzero constant: gcd(f, modulus) = 1 since modulus irreducible
        c = r1.coefficients[0]
        inv = t1.scale(FieldElement(self.base, self.base._inv(c.value)))
        coeffs = list(x.value for x in inv.coefficients)
        z = self.base.zero().value
        coeffs += [z] * (self.s - len(coeffs))
        return tuple(coeffs[: self.s])


class FieldElement:
    """An element of a Field; equality is representational."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _check(self, other: "FieldElement"):
        if self.field != other.field:
            raise FieldMismatch(f"elements of {self.field} and {other.field}")

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self != self.field.zero()

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field._add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(
            self.field, self.field._add(self.value, self.field._neg(other.value))
        )

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"{self.value}"


class UniPoly:
    """Immutable univariate polynomial, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("field", "coefficients")

    def __init__(self, field: Field, coefficients: Sequence[FieldElement]):
        coeffs = list(coefficients)
        zero = field.zero()
        for c in coeffs:
            if c.field != field:
                raise FieldMismatch("coefficient from a different field")
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        self.field = field
        self.coefficients = tuple(coeffs)

    @classmethod
    def zero(cls, field: Field) -> "UniPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "UniPoly":
        return cls(field, (field.one(),))

    @classmethod
    def t(cls, field: Field) -> "UniPoly":
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def from_ints(cls, field: Field, ints: Sequence[int]) -> "UniPoly":
        return cls(field, tuple(field.from_int(k) for k in ints))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.field, self.coefficients))

    def _check(self, other: "UniPoly"):
        if self.field != other.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(self.field, out)

    def __neg__(self):
        return UniPoly(self.field, tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        zero = self.field.zero()
        out = [zero] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == zero:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    def scale(self, c: FieldElement) -> "UniPoly":
        return UniPoly(self.field, tuple(a * c for a in self.coefficients))

    def divmod(self, other: "UniPoly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dlead = other.coefficients[-1].inverse()
        dn = other.degree
        quot = [self.field.zero()] * max(0, len(rem) - dn)
        for k in range(len(rem) - dn - 1, -1, -1):
            c = rem[k + dn] * dlead
            if c:
                quot[k] = c
                for j, b in enumerate(other.coefficients):
                    rem[k + j] = rem[k + j] - c * b
        return UniPoly(self.field, quot), UniPoly(self.field, rem[:dn])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.coefficients[-1]
        if lead == self.field.one():
            return self
        return self.scale(lead.inverse())

    def derivative(self) -> "UniPoly":
        return UniPoly(
            self.field,
            tuple(
                c * self.field.from_int(i)
                for i, c in enumerate(self.coefficients)
                if i > 0
            ),
        )

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = self.field.zero()
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def pow_mod(self, n: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.field) % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            n >>= 1
        return result

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return " + ".join(parts)


def frob_root(c: FieldElement) -> FieldElement:
    """The unique p-th root of c (finite fields are perfect).

    In GF(p) every element is its own p-th root (Fermat); in GF(p^s) the
    root is c^(p^(s-1)) since c^(p^s) = c.
    """
    s = c.field.degree
    if s == 1:
        return c
    return c ** (c.field.p ** (s - 1))


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if f.field != g.field:
        raise FieldMismatch("gcd of polynomials over different fields")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _pth_root_poly(f: UniPoly) -> UniPoly:
    """p-th root of a polynomial of the form u(t^p)."""
    p = f.field.p
    coeffs = []
    for i, c in enumerate(f.coefficients):
        if i % p == 0:
            coeffs.append(frob_root(c))
        elif c:
            raise ValueError("polynomial is not a p-th power")
    return UniPoly(f.field, coeffs)


def _poly_sort_key(g: UniPoly):
    return (g.degree, [repr(c) for c in g.coefficients])


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Squarefree decomposition of f in characteristic p.

    Returns pairwise-coprime monic squarefree factors g_i with
    prod g_i^(m_i) = f up to the leading coefficient.  The gcd loop peels
    the factors whose multiplicity is prime to p; what remains is a p-th
    power and is handled by recursion through the p-th root.
    """
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    f = f.monic()
    factors: dict[UniPoly, int] = {}
    _squarefree_into(f, 1, factors)
    return sorted(factors.items(), key=lambda kv: _poly_sort_key(kv[0]))


def _squarefree_into(f: UniPoly, outer: int, factors: dict) -> None:
    if f.degree <= 0:
        return
    df = f.derivative()
    c = poly_gcd(f, df)  # = f itself when df == 0
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            factors[z] = factors.get(z, 0) + i * outer
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        # remaining part is u(t^p); recurse with multiplicities times p
        _squarefree_into(_pth_root_poly(c), outer * f.field.p, factors)


def distinct_root_count(f: UniPoly) -> int:
    """Number of distinct roots of f in the algebraic closure.

    Equals the degree of the squarefree part, which splits into distinct
    linear factors over the closure.
    """
    if f.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    return sum(g.degree for g, _ in squarefree_decomposition(f))


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: UniPoly) -> bool:
    """Irreducibility over the coefficient field.

    Root search for degree <= 3 over small fields; otherwise the
    distinct-degree sieve t^(Q^d) = t mod f with gcd checks at the
    maximal proper sub-exponents.
    """
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    field = f.field
    q = field.order
    if d <= 3 and q <= MAX_TABLE_ORDER:
        return all(f.evaluate(x) for x in field.elements())
    t = UniPoly.t(field)
    h = t
    for _ in range(d):
        h = h.pow_mod(q, f)
    if h != t % f:
        return False
    for r in _prime_factors(d):
        g = t
        for _ in range(d // r):
            g = g.pow_mod(q, f)
        if poly_gcd(g - t, f).degree > 0:
            return False
    return True


def field_make(p: int, s: int, modulus: Optional[UniPoly] = None) -> Field:
    """Construct GF(p) or GF(p^s) with a verified irreducible modulus."""
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    if s > MAX_EXTENSION_DEGREE:
        raise ValueError(f"extension degree cap exceeded: {s} > {MAX_EXTENSION_DEGREE}")
    base = PrimeField(p)
    if s == 1:
        if modulus is not None:
            raise ValueError("modulus must be omitted for a prime field")
        return base
    if modulus is None:
        raise ValueError("modulus required for s > 1")
    if modulus.field != base:
        raise FieldMismatch("modulus must be a polynomial over GF(p)")
    if modulus.degree != s:
        raise ValueError(f"modulus degree {modulus.degree} does not match s = {s}")
    return ExtensionField(base, modulus)


def find_irreducible(field: Field, degree: int) -> UniPoly:
    """First monic irreducible polynomial of the given degree over field,
    in the deterministic coefficient-enumeration order."""
    if field.order**degree > MAX_TABLE_ORDER**2:
        raise FieldTooLarge("field too large to search for an irreducible modulus")
    elems = list(field.elements())
    q = len(elems)

    def candidates():
        for code in range(q**degree):
            coeffs = []
            c = code
            for _ in range(degree):
                coeffs.append(elems[c % q])
                c //= q
            coeffs.append(field.one())
            yield UniPoly(field, coeffs)

    for f in candidates():
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducible polynomials always exist")


@lru_cache(maxsize=None)
def _extension_cache(field: Field, s: int) -> ExtensionField:
    return ExtensionField(field, find_irreducible(field, s), check=False)


def extend_field(field: Field, s: int) -> ExtensionField:
    """Degree-s scalar extension of field, cached so repeated requests share
    element tables downstream."""
    if s < 2:
        raise ValueError("extension degree must be >= 2")
    return _extension_cache(field, s)


def flatten_to_prime(c: FieldElement) -> tuple[int, ...]:
    """GF(p)-coefficient vector of an element of a tower, length field.degree."""
    if isinstance(c.field, PrimeField):
        return (c.value,)
    field = c.field
    out: list[int] = []
    for part in c.value:
        out.extend(flatten_to_prime(FieldElement(field.base, part)))
    return tuple(out)


def unflatten_from_prime(field: Field, digits: Sequence[int]) -> FieldElement:
    """Inverse of flatten_to_prime."""
    if isinstance(field, PrimeField):
        assert len(digits) == 1
        return FieldElement(field, digits[0] % field.p)
    step = field.base.degree
    parts = tuple(
        unflatten_from_prime(field.base, digits[i * step : (i + 1) * step]).value
        for i in range(field.s)
    )
    return FieldElement(field, parts)
