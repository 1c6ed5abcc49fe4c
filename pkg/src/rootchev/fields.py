"""
Exact coefficient arithmetic: arbitrary-precision rationals and finite fields.

Scalars are immutable and canonical: a ``Fraction`` in lowest terms over the
rationals, a residue in ``[0, p)`` over a prime field, and a coefficient
tuple (constant term first) over a prime-power field ``F_p[x]/(f)``.  The
reduction polynomial ``f`` is the lexicographically least monic irreducible
of the requested degree, so a field descriptor determines the arithmetic
completely.  No floating point anywhere; mixing scalars from different
fields raises ``FieldMismatch``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class FieldError(ValueError):
    pass


class FieldMismatch(FieldError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division; fields here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Scalar:
    """An immutable field element.  Arithmetic is exact and closed."""

    __slots__ = ("field", "v")

    def __init__(self, field: "Field", v):
        self.field = field
        self.v = v

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"mixed fields: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._sub(self.v, o.v))

    def __rsub__(self, other):
        o = self._coerce(other)
        return Scalar(self.field, self.field._sub(o.v, self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.v, o.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._div(self.v, o.v))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return Scalar(self.field, self.field._div(o.v, self.v))

    def __neg__(self):
        return Scalar(self.field, self.field._sub(self.field._zero, self.v))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field._div(self.field._one, self.v))

    def __bool__(self):
        return self.v != self.field._zero

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.v == other.v

    def __hash__(self):
        return hash((id(type(self.field)), self.field.key(), self.v))

    def sort_key(self):
        return self.field.sort_key(self.v)

    def __repr__(self):
        return f"{self.field.format(self.v)}"


class Field:
    """Base class; subclasses supply raw-value arithmetic on their canonical form."""

    size: int | None = None  # None means infinite
    char: int = 0

    def scalar(self, value) -> Scalar:
        raise NotImplementedError

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    @property
    def zero(self) -> Scalar:
        return Scalar(self, self._zero)

    @property
    def one(self) -> Scalar:
        return Scalar(self, self._one)

    def units(self) -> list[Scalar]:
        """All q-1 nonzero elements, in a fixed deterministic order."""
        if self.size is None:
            raise FieldError("units() requires a finite field")
        return [Scalar(self, v) for v in self._unit_values()]

    def elements(self) -> list[Scalar]:
        if self.size is None:
            raise FieldError("elements() requires a finite field")
        return [self.zero] + self.units()

    def sample(self, rng, nonzero: bool = False) -> Scalar:
        """Random element, used for seeded trials.  Rationals draw small fractions."""
        if self.size is not None:
            pool = self.units() if nonzero else self.elements()
            return pool[rng.randrange(len(pool))]
        while True:
            num = rng.randint(-6, 6)
            if num or not nonzero:
                return self.scalar(Fraction(num, rng.randint(1, 4)))

    def format(self, v) -> str:
        return str(v)


class Rationals(Field):
    size = None
    char = 0
    _zero = Fraction(0)
    _one = Fraction(1)

    def key(self):
        return "Q"

    def scalar(self, value) -> Scalar:
        return Scalar(self, Fraction(value))

    @staticmethod
    def _add(a, b):
        return a + b

    @staticmethod
    def _sub(a, b):
        return a - b

    @staticmethod
    def _mul(a, b):
        return a * b

    @staticmethod
    def _div(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def sort_key(self, v):
        return (v,)

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.size = p
        self.char = p
        self._zero = 0
        self._one = 1 % p

    def key(self):
        return self.p

    def scalar(self, value) -> Scalar:
        if isinstance(value, Fraction):
            return Scalar(self, self._div(value.numerator % self.p, value.denominator % self.p))
        return Scalar(self, value % self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def _unit_values(self):
        return list(range(1, self.p))

    def sort_key(self, v):
        return (v,)

    def __repr__(self):
        return f"F{self.p}"


def _poly_trim(c: tuple) -> tuple:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mulmod(a, b, f, p):
    # a, b reduced mod f; f monic of degree k given by its full coefficient tuple
    k = len(f) - 1
    out = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by f: x^k = -(f[0..k-1])
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for j in range(k):
                out[d - k + j] = (out[d - k + j] - c * f[j]) % p
    return _poly_trim(tuple(out[:k]))


def _poly_divmod(a, b, p):
    # monic-leading division over F_p; b nonzero
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * (max(da - db + 1, 0))
    while da >= db and any(a):
        if a[da] == 0:
            da -= 1
            continue
        c = a[da] * inv_lead % p
        q[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        da -= 1
    return _poly_trim(tuple(q)), _poly_trim(tuple(a))


def _poly_is_irreducible(f, p):
    k = len(f) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = tuple(tail) + (1,)
            _, r = _poly_divmod(f, g, p)
            if not r:
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are scanned by the integer
    value sum c_i p^i, which makes the choice reproducible across runs.
    """
    for n in range(p ** k):
        coeffs = []
        v = n
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        f = tuple(coeffs) + (1,)
        if _poly_is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


class PrimePowerField(Field):
    """F_{p^k} as F_p[x]/(f) with the canonical reduction polynomial."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 2:
            raise FieldError("use PrimeField for k=1")
        self.p = p
        self.k = k
        self.size = p ** k
        self.char = p
        self.reduction = least_irreducible(p, k)
        self._zero = ()
        self._one = (1,)

    def key(self):
        return (self.p, self.k)

    def scalar(self, value) -> Scalar:
        if isinstance(value, tuple):
            return Scalar(self, _poly_trim(tuple(c % self.p for c in value)))
        if isinstance(value, Fraction):
            num = self.scalar(value.numerator)
            den = self.scalar(value.denominator)
            return num / den
        return Scalar(self, _poly_trim((value % self.p,)))

    def _add(self, a, b):
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return _poly_trim(tuple((x + y) % self.p for x, y in zip(a, b)))

    def _sub(self, a, b):
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return _poly_trim(tuple((x - y) % self.p for x, y in zip(a, b)))

    def _mul(self, a, b):
        return _poly_mulmod(a, b, self.reduction, self.p)

    def _inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in F_{self.p}^{self.k}")
        # extended Euclid in F_p[x]
        r0, r1 = self.reduction, a
        s0, s1 = (), (1,)
        while r1:
            q, r = _poly_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            # s0 - q*s1 without modular reduction by f (degrees stay < k)
            prod = [0] * (len(q) + len(s1) - 1 if q and s1 else 0)
            for i, qi in enumerate(q):
                for j, sj in enumerate(s1):
                    prod[i + j] = (prod[i + j] + qi * sj) % self.p
            n = max(len(s0), len(prod))
            s = tuple(((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % self.p
                      for i in range(n))
            s0, s1 = s1, _poly_trim(s)
        # r0 is the gcd, a nonzero constant
        c = pow(r0[0], self.p - 2, self.p)
        return _poly_trim(tuple(x * c % self.p for x in s0))

    def _div(self, a, b):
        return self._mul(a, self._inv(b))

    def _unit_values(self):
        vals = []
        for n in range(1, self.size):
            coeffs = []
            v = n
            for _ in range(self.k):
                coeffs.append(v % self.p)
                v //= self.p
            vals.append(_poly_trim(tuple(coeffs)))
        return vals

    def sort_key(self, v):
        return (len(v), v)

    def format(self, v):
        if not v:
            return "0"
        terms = []
        for i, c in enumerate(v):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}x" if c != 1 else "x")
            else:
                terms.append(f"{c}x^{i}" if c != 1 else f"x^{i}")
        return "+".join(terms)

    def __repr__(self):
        return f"F{self.size}=F{self.p}^{self.k}"


QQ = Rationals()


def parse_field(spec: str) -> Field:
    """Parse a CLI field descriptor: "Q", "F2", "F5", "F4=F2^2"."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return QQ
    if "=" in spec:
        left, right = spec.split("=", 1)
        if not (left.startswith("F") and right.startswith("F") and "^" in right):
            raise FieldError(f"bad field descriptor {spec!r}")
        base, exp = right[1:].split("^", 1)
        p, k = int(base), int(exp)
        if int(left[1:]) != p ** k:
            raise FieldError(f"inconsistent field descriptor {spec!r}")
        return PrimePowerField(p, k)
    if spec.startswith("F"):
        q = int(spec[1:])
        if is_prime(q):
            return PrimeField(q)
        # bare prime power: factor it
        for p in range(2, q):
            if q % p == 0:
                k = 0
                m = q
                while m % p == 0:
                    m //= p
                    k += 1
                if m == 1 and is_prime(p):
                    return PrimePowerField(p, k)
                break
        raise FieldError(f"{q} is not a prime power")
    raise FieldError(f"bad field descriptor {spec!r}")


def field_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch form of scalar arithmetic used by the CLI."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown op {op!r}")
