"""Finite fields F_{p^n} in exponent (discrete-log) representation.

A nonzero element is stored as its exponent ``e`` with respect to a fixed
primitive element alpha (the residue class of ``x`` modulo the defining
polynomial), so ``alpha**e``.  The zero element is ``None``.  Addition goes
through a Zech-logarithm table: ``alpha**i + alpha**j = alpha**j * (1 + alpha**(i-j))``.

Coordinate vectors (coefficients of 1, x, ..., x^(n-1)) only appear at the
``to_vector``/``from_vector`` boundary.  Internally they are packed into a
base-p integer ("code"), digit k holding the coefficient of x^k.
"""

from __future__ import annotations

import builtins
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

FieldElement = Optional[int]
ZERO: FieldElement = None

# Sentinel used inside numpy tables where an entry would be the zero element.
ZECH_ZERO = -1


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class NotPrimitive(FieldError):
    pass


class BadPolynomial(FieldError):
    pass


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldParams:
    p: int
    n: int
    poly: tuple[int, ...]  # ascending coefficients, poly[n] == 1
    q_minus_1: int
    m: int  # (p^n - 1) / (p - 1), cycle length of the P0 points

    @property
    def q(self) -> int:
        return self.q_minus_1 + 1


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable lookup tables for one field.

    ``antilog[e]`` is the packed coordinate code of alpha^e, ``log[code]``
    the inverse (``-1`` for the zero code), ``zech[i]`` the exponent of
    ``1 + alpha^i`` or ``ZECH_ZERO``.
    """

    params: FieldParams
    antilog: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    zech: np.ndarray = field(repr=False)
    neg_one: int  # exponent of -1

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def q_minus_1(self) -> int:
        return self.params.q_minus_1

    @property
    def m(self) -> int:
        return self.params.m

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n}, poly={format_poly(self.params.poly)})"


def build_field(p: int, n: int, poly: Sequence[int]) -> FieldCtx:
    """Build the exponent tables for F_{p^n} = F_p[x]/(poly).

    ``poly`` lists coefficients constant term first and must be monic of
    degree ``n``.  Raises :class:`NotPrimitive` unless ``x`` has
    multiplicative order exactly ``p**n - 1``.
    """
    if not is_prime(p):
        raise NotPrime(f"characteristic p={p} is not prime")
    if not is_prime(n):
        raise NotPrime(f"extension degree n={n} is not prime")
    poly = tuple(int(c) for c in poly)
    if len(poly) != n + 1:
        raise BadPolynomial(f"expected {n + 1} coefficients for degree {n}, got {len(poly)}")
    if any(c < 0 or c >= p for c in poly):
        raise BadPolynomial(f"coefficients must lie in Z_{p}")
    if poly[n] != 1:
        raise BadPolynomial("polynomial is not monic")

    q = p**n
    qm1 = q - 1
    top = p ** (n - 1)
    # x^n = -(poly[0] + ... + poly[n-1] x^(n-1))
    reduction = [(-c) % p for c in poly[:n]]

    antilog = np.zeros(qm1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    code = 1
    for e in range(qm1):
        if e > 0 and code == 1:
            raise NotPrimitive(f"x has order {e} < {qm1} modulo {format_poly(poly)}")
        antilog[e] = code
        if log[code] != -1:
            raise NotPrimitive(f"x has order dividing {e} modulo {format_poly(poly)}")
        log[code] = e
        # multiply by x: shift digits up, fold the overflowing x^n term back
        lead = code // top
        shifted = (code % top) * p
        if lead:
            shifted = _code_add(shifted, _scale_digits(reduction, lead, p), p, n)
        code = shifted
    if code != 1:
        raise NotPrimitive(f"x does not generate the multiplicative group modulo {format_poly(poly)}")

    # zech[i] = log(1 + alpha^i): add one to the constant digit.
    d0 = antilog % p
    plus_one = antilog - d0 + (d0 + 1) % p
    zech = log[plus_one]
    zech[zech < 0] = ZECH_ZERO

    params = FieldParams(p=p, n=n, poly=poly, q_minus_1=qm1, m=qm1 // (p - 1))
    neg_one = 0 if p == 2 else qm1 // 2
    for arr in (antilog, log, zech):
        arr.setflags(write=False)
    return FieldCtx(params=params, antilog=antilog, log=log, zech=zech, neg_one=neg_one)


def _scale_digits(digits: Sequence[int], c: int, p: int) -> int:
    code = 0
    for k in reversed(range(len(digits))):
        code = code * p + (digits[k] * c) % p
    return code


def _code_add(a: int, b: int, p: int, n: int) -> int:
    if p == 2:
        return a ^ b
    out, scale = 0, 1
    for _ in range(n):
        out += ((a % p + b % p) % p) * scale
        a //= p
        b //= p
        scale *= p
    return out


# -- element arithmetic -------------------------------------------------------


def add(ctx: FieldCtx, a: FieldElement, b: FieldElement) -> FieldElement:
    if a is None:
        return b
    if b is None:
        return a
    z = int(ctx.zech[(a - b) % ctx.q_minus_1])
    if z == ZECH_ZERO:
        return None
    return (b + z) % ctx.q_minus_1


def mul(ctx: FieldCtx, a: FieldElement, b: FieldElement) -> FieldElement:
    if a is None or b is None:
        return None
    return (a + b) % ctx.q_minus_1


def pow(ctx: FieldCtx, a: FieldElement, k: int) -> FieldElement:  # noqa: A001
    if a is None:
        if k <= 0:
            raise ZeroDivisionError("zero to a non-positive power")
        return None
    return (a * k) % ctx.q_minus_1


def neg(ctx: FieldCtx, a: FieldElement) -> FieldElement:
    if a is None:
        return None
    return (a + ctx.neg_one) % ctx.q_minus_1


def sub(ctx: FieldCtx, a: FieldElement, b: FieldElement) -> FieldElement:
    return add(ctx, a, neg(ctx, b))


def inv(ctx: FieldCtx, a: FieldElement) -> FieldElement:
    if a is None:
        raise ZeroDivisionError("zero has no inverse")
    return (-a) % ctx.q_minus_1


def to_vector(ctx: FieldCtx, a: FieldElement) -> tuple[int, ...]:
    code = 0 if a is None else int(ctx.antilog[a % ctx.q_minus_1])
    out = []
    for _ in range(ctx.n):
        out.append(code % ctx.p)
        code //= ctx.p
    return tuple(out)


def from_vector(ctx: FieldCtx, v: Sequence[int]) -> FieldElement:
    if len(v) != ctx.n:
        raise ValueError(f"vector length {len(v)} != n={ctx.n}")
    code = 0
    for c in reversed(v):
        code = code * ctx.p + int(c) % ctx.p
    e = int(ctx.log[code])
    return None if e < 0 else e


def from_prime_field(ctx: FieldCtx, c: int) -> FieldElement:
    """Embed ``c`` in Z_p into F_{p^n}."""
    return from_vector(ctx, (c % ctx.p,) + (0,) * (ctx.n - 1))


def frobenius(ctx: FieldCtx, ell: int, a: FieldElement) -> FieldElement:
    """x -> x^(p^ell); fixes zero."""
    if a is None:
        return None
    return (a * pow_mod(ctx.p, ell, ctx.q_minus_1)) % ctx.q_minus_1


def cyclic_shift(ctx: FieldCtx, j: int, a: FieldElement) -> FieldElement:
    """alpha^i -> alpha^(i+j); fixes zero."""
    if a is None:
        return None
    return (a + j) % ctx.q_minus_1


def pow_mod(base: int, exp: int, mod: int) -> int:
    return builtins.pow(base, exp, mod)


def element_order(ctx: FieldCtx, a: FieldElement) -> int:
    """Multiplicative order found by iterating powers."""
    if a is None:
        raise ValueError("zero has no multiplicative order")
    k, cur = 1, a % ctx.q_minus_1
    while cur != 0:
        cur = (cur + a) % ctx.q_minus_1
        k += 1
    return k


# -- field specs and presets ---------------------------------------------------

PRESETS: dict[str, tuple[int, int, tuple[int, ...]]] = {
    # x^5 + 2x + 1 over F_3: the reciprocal of x^5 + 2x^4 + 1 and the only
    # choice under which the PG(5,3) seed lines are lines at all.
    "f3_5": (3, 5, (1, 2, 0, 0, 0, 1)),
    "f3_5_stated": (3, 5, (1, 0, 0, 0, 2, 1)),
    # x^7 + x + 1
    "f2_7": (2, 7, (1, 1, 0, 0, 0, 0, 0, 1)),
    # x^13 + x^4 + x^3 + x + 1
    "f2_13": (2, 13, (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1)),
    # small fields handy for tests and experiments
    "f2_3": (2, 3, (1, 1, 0, 1)),
    "f2_5": (2, 5, (1, 0, 1, 0, 0, 1)),
}

_TERM = re.compile(r"^(\d*)(?:x(?:\^(\d+))?)?$")


def parse_poly(text: str, p: int) -> tuple[int, ...]:
    """Parse ``1+0x+2x^4+x^5`` style polynomials into ascending coefficients."""
    coeffs: dict[int, int] = {}
    for raw in text.replace(" ", "").split("+"):
        if not raw:
            raise BadPolynomial(f"empty term in {text!r}")
        mt = _TERM.match(raw)
        if mt is None or raw == "":
            raise BadPolynomial(f"cannot parse term {raw!r}")
        c_txt, e_txt = mt.groups()
        has_x = "x" in raw
        c = int(c_txt) if c_txt else 1
        e = (int(e_txt) if e_txt else 1) if has_x else 0
        coeffs[e] = (coeffs.get(e, 0) + c) % p
    deg = max(coeffs)
    return tuple(coeffs.get(k, 0) for k in range(deg + 1))


def format_poly(poly: Sequence[int]) -> str:
    terms = []
    for k, c in enumerate(poly):
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(f"{c}x" if c != 1 else "x")
        else:
            terms.append(f"{c}x^{k}" if c != 1 else f"x^{k}")
    return "+".join(terms)


def parse_field_spec(text: str) -> tuple[int, int, tuple[int, ...]]:
    """Resolve a preset name or a ``p=3,n=5,poly=...`` string."""
    if text in PRESETS:
        return PRESETS[text]
    parts = {}
    for item in text.split(","):
        if "=" not in item:
            raise ValueError(f"bad field spec {text!r}; expected a preset {sorted(PRESETS)} or p=..,n=..,poly=..")
        k, v = item.split("=", 1)
        parts[k.strip()] = v.strip()
    try:
        p, n = int(parts["p"]), int(parts["n"])
        poly = parse_poly(parts["poly"], p)
    except KeyError as exc:
        raise ValueError(f"field spec {text!r} is missing {exc}") from None
    return p, n, poly


def field_from_spec(text: str) -> FieldCtx:
    return build_field(*parse_field_spec(text))
