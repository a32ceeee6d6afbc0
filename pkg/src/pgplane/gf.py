"""Exact arithmetic in GF(p^h).

Field elements are plain integers in [0, q).  The base-p digits of the
code are the coefficients of a polynomial over Z_p, constant term least
significant; code 0 is the additive and code 1 the multiplicative
identity.  The modulus is the monic irreducible polynomial of degree h
whose non-leading coefficient vector, read as a base-p integer, is
minimal, so constructing a field is a pure function of (p, h).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field


MAX_ORDER = 1 << 16
MAX_DEGREE = 4
# full add/mul tables are built below this order
_TABLE_LIMIT = 2048


class FieldError(ValueError):
    """Invalid field parameter or arithmetic (division by zero etc.)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomials over Z_p, as coefficient tuples with constant term first

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_rem(num, den, p):
    """Remainder of num modulo den (den monic), over Z_p."""
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - 1 - dd
        lead = num[-1]
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * c) % p
        num.pop()
    return _poly_trim(num)


def _monic_polys(degree, p):
    """All monic polynomials of the given degree over Z_p, ascending code."""
    for code in range(p ** degree):
        digits = []
        c = code
        for _ in range(degree):
            digits.append(c % p)
            c //= p
        yield tuple(digits) + (1,)


def _is_irreducible(poly, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_rem(poly, g, p):
                return False
    return True


def _minimal_modulus(p, h):
    if h == 1:
        return (0, 1)
    for cand in _monic_polys(h, p):
        if _is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {h} over Z_{p}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of GF(p^h) plus cached arithmetic tables."""

    p: int
    h: int
    q: int
    modulus: tuple
    _mul: list = field(default=None, repr=False, compare=False)
    _add: list = field(default=None, repr=False, compare=False)
    _inv: list = field(default=None, repr=False, compare=False)
    _squares: frozenset = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.q <= _TABLE_LIMIT:
            q = self.q
            mul = [0] * (q * q)
            add = [0] * (q * q)
            for a in range(q):
                base = a * q
                for b in range(q):
                    mul[base + b] = _mul_raw(self, a, b)
                    add[base + b] = _add_raw(self, a, b)
            inv = [0] * q
            for a in range(1, q):
                inv[a] = _pow_raw(self, a, q - 2, mul)
            object.__setattr__(self, '_mul', mul)
            object.__setattr__(self, '_add', add)
            object.__setattr__(self, '_inv', inv)
        sq = frozenset(self.mul(b, b) for b in range(self.q))
        object.__setattr__(self, '_squares', sq)

    # -- element helpers ----------------------------------------------------

    def digits(self, a):
        out = []
        for _ in range(self.h):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, digits):
        code = 0
        for d in reversed(digits):
            code = code * self.p + (d % self.p)
        return code

    def check(self, a):
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"invalid element code {a!r} for GF({self.q})")
        return a

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        if self._add is not None:
            return self._add[a * self.q + b]
        return _add_raw(self, a, b)

    def neg(self, a):
        return self.encode([-d for d in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a * self.q + b]
        return _mul_raw(self, a, b)

    def inv(self, a):
        if a == 0:
            raise FieldError("inversion of zero")
        if self._inv is not None:
            return self._inv[a]
        return _pow_raw(self, a, self.q - 2, None)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        return _pow_raw(self, a, e, self._mul)

    def scalar(self, c):
        """Embed c in Z_p as a field element."""
        return c % self.p

    def is_square(self, a):
        self.check(a)
        return a in self._squares


def _add_raw(F, a, b):
    da, db = F.digits(a), F.digits(b)
    return F.encode([x + y for x, y in zip(da, db)])


def _mul_raw(F, a, b):
    p, h = F.p, F.h
    da, db = F.digits(a), F.digits(b)
    conv = [0] * (2 * h - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                conv[i + j] += x * y
    conv = [c % p for c in conv]
    # reduce modulo the defining polynomial, highest power first
    for k in range(2 * h - 2, h - 1, -1):
        c = conv[k]
        if c:
            conv[k] = 0
            for i in range(h):
                conv[k - h + i] = (conv[k - h + i] - c * F.modulus[i]) % p
    return F.encode(conv[:h])


def _pow_raw(F, a, e, mul):
    result = 1
    base = a
    if mul is not None:
        q = F.q
        while e:
            if e & 1:
                result = mul[result * q + base]
            base = mul[base * q + base]
            e >>= 1
    else:
        while e:
            if e & 1:
                result = _mul_raw(F, result, base)
            base = _mul_raw(F, base, base)
            e >>= 1
    return result


# ---------------------------------------------------------------------------
# public operations


@functools.lru_cache(maxsize=None)
def field_create(p: int, h: int) -> FieldSpec:
    """Deterministic GF(p^h); identical FieldSpec on every call."""
    if not is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    if not 1 <= h <= MAX_DEGREE:
        raise FieldError(f"extension degree h = {h} out of range 1..{MAX_DEGREE}")
    q = p ** h
    if q > MAX_ORDER:
        raise FieldError(f"field order {q} exceeds cap {MAX_ORDER}")
    return FieldSpec(p=p, h=h, q=q, modulus=_minimal_modulus(p, h))


_ARITH_OPS = {
    'add': lambda F, a, b: F.add(a, b),
    'sub': lambda F, a, b: F.sub(a, b),
    'mul': lambda F, a, b: F.mul(a, b),
    'div': lambda F, a, b: F.div(a, b),
    'pow': lambda F, a, e: F.pow(a, e),
    'neg': lambda F, a, b: F.neg(a),
    'inv': lambda F, a, b: F.inv(a),
}


def field_arith(spec: FieldSpec, op: str, a: int, b: int = 0) -> int:
    """Name-dispatched field arithmetic (CLI and document interface)."""
    if op not in _ARITH_OPS:
        raise FieldError(f"unknown field operation {op!r}")
    spec.check(a)
    if op in ('add', 'sub', 'mul', 'div'):
        spec.check(b)
    return _ARITH_OPS[op](spec, a, b)


def is_square(spec: FieldSpec, a: int) -> bool:
    """True iff a is a square in GF(q); every element is a square for even q."""
    spec.check(a)
    return a in spec._squares


def frobenius(spec: FieldSpec, a: int, k: int) -> int:
    """a ** (p**k)."""
    spec.check(a)
    if not 0 <= k <= spec.h:
        raise FieldError(f"frobenius power {k} out of range 0..{spec.h}")
    return spec.pow(a, spec.p ** k)


def spec_to_doc(spec: FieldSpec) -> dict:
    return {'p': spec.p, 'h': spec.h, 'modulus': list(spec.modulus)}


def spec_from_doc(doc: dict) -> FieldSpec:
    spec = field_create(int(doc['p']), int(doc['h']))
    if 'modulus' in doc and list(doc['modulus']) != list(spec.modulus):
        raise FieldError(f"modulus {doc['modulus']} does not match the "
                         f"deterministic modulus {list(spec.modulus)}")
    return spec
