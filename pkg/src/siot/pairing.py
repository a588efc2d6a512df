"""Weil pairing on prime-power torsion, distortion and symmetric variants,
and pairing-based decomposition of points over a torsion basis.

The pairing is computed with Miller's algorithm as a ratio of Miller
functions evaluated at divisor representatives offset by an auxiliary
point.  Auxiliary points are drawn from a hash of the inputs, so every
call is deterministic; degenerate draws (a zero or pole of an
intermediate line) are retried with the next counter value and never
surface to the caller.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .curve import EllipticCurve, Point, INFINITY
from .errors import (
    DecompositionError,
    InvalidPointError,
    UnsupportedParameterError,
)
from .field import Fp2


class _Degenerate(Exception):
    """Internal: auxiliary point hit a zero or pole. Retried, never raised out."""


@dataclass(frozen=True)
class RootOfUnity:
    """A value in the order-n subgroup of the multiplicative group of Fp2."""

    value: Fp2
    order_bound: int

    def __post_init__(self):
        if self.value ** self.order_bound != self.value.ctx.one():
            raise ValueError("value does not satisfy its order bound")

    def __mul__(self, other):
        v = other.value if isinstance(other, RootOfUnity) else other
        return RootOfUnity(self.value * v, self.order_bound)

    def __pow__(self, k: int):
        return RootOfUnity(self.value ** (k % self.order_bound), self.order_bound)

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.value == other.value
        if isinstance(other, Fp2):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def is_one(self) -> bool:
        return self.value == self.value.ctx.one()

    def multiplicative_order(self) -> int:
        # order divides order_bound; walk the divisors of a prime power
        n = self.order_bound
        o = 1
        v = self.value
        while v != v.ctx.one():
            ell = _smallest_prime_factor(n)
            v = v ** ell
            o *= ell
            n //= ell
            if n == 0:
                raise ValueError("order does not divide bound")
        return o


@dataclass(frozen=True)
class BasisDecomposition:
    """Coefficients (u, v) of P = [u]G + [v]H over a torsion basis."""

    u: int
    v: int


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _line_value(E: EllipticCurve, T: Point, U: Point, X: Point) -> Fp2:
    """Value at X of the line through T and U (tangent when T = U).

    The line through a point and its negative, or through a point and
    the identity, is the vertical at that point.
    """
    if T.infinity or U.infinity:
        R = U if T.infinity else T
        if R.infinity:
            return E.ctx.one()
        return X.x - R.x
    if T.x == U.x and T.y == -U.y:
        return X.x - T.x
    if T == U:
        if not T.y:
            return X.x - T.x
        lam = (E.ctx.elem(3) * T.x * T.x + E.A) / (E.ctx.elem(2) * T.y)
    else:
        lam = (U.y - T.y) / (U.x - T.x)
    return X.y - T.y - lam * (X.x - T.x)


def miller_function(E: EllipticCurve, P: Point, n: int, X: Point) -> Fp2:
    """Evaluate the Miller function f_{n,P} at X by double-and-add.

    f_{n,P} has divisor n(P) - ([n]P) - (n-1)(O).  Raises _Degenerate
    when X lands on a zero or pole of an intermediate line, which the
    pairing wrapper handles by re-drawing its auxiliary point.
    """
    if X.infinity:
        raise _Degenerate
    f = E.ctx.one()
    T = P
    for bit in bin(n)[3:]:
        num = _line_value(E, T, T, X)
        T = E.double(T)
        den = (X.x - T.x) if not T.infinity else E.ctx.one()
        if not num or not den:
            raise _Degenerate
        f = f * f * num / den
        if bit == "1":
            num = _line_value(E, T, P, X)
            T = E._add_raw(T, P)
            den = (X.x - T.x) if not T.infinity else E.ctx.one()
            if not num or not den:
                raise _Degenerate
            f = f * num / den
    return f


def _aux_point(E: EllipticCurve, P: Point, Q: Point, n: int, attempt: int) -> Point:
    """Deterministic auxiliary point: hash the inputs, walk x candidates."""
    material = b"siot/pairing-aux" + n.to_bytes(8, "big")
    material += attempt.to_bytes(4, "big")
    for pt in (P, Q):
        material += pt.x.encode() + pt.y.encode()
    rng = random.Random(int.from_bytes(hashlib.sha256(material).digest(), "big"))
    return E.random_point(rng)


def weil_pairing(E: EllipticCurve, P: Point, Q: Point, n: int) -> RootOfUnity:
    """Weil pairing e_n(P, Q) for n-torsion points P, Q.

    Bilinear, alternating, and nondegenerate on a basis of the full
    n-torsion.  Computed as

        [f_{n,P}(Q+S) / f_{n,P}(S)] / [f_{n,Q}(P-S) / f_{n,Q}(-S)]

    for an auxiliary point S avoiding all zeros and poles.
    """
    E.check_point(P)
    E.check_point(Q)
    if not E.mul(n, P).infinity or not E.mul(n, Q).infinity:
        raise InvalidPointError(f"arguments must be {n}-torsion points")
    if P.infinity or Q.infinity or P == Q or P == E.neg(Q):
        return RootOfUnity(E.ctx.one(), n)
    for attempt in range(256):
        S = _aux_point(E, P, Q, n, attempt)
        try:
            a = miller_function(E, P, n, E.add(Q, S)) / miller_function(E, P, n, S)
            b = miller_function(E, Q, n, E.sub(P, S)) / miller_function(
                E, Q, n, E.neg(S))
            return RootOfUnity(a / b, n)
        except (_Degenerate, ZeroDivisionError):
            continue
    raise ArithmeticError("no admissible auxiliary point in 256 draws")


def distortion_map(E: EllipticCurve, P: Point) -> Point:
    """The endomorphism (x, y) -> (-x, i*y) of the curve y^2 = x^3 + x.

    Sends a point to one outside its own cyclic subgroup, which makes
    the modified pairing below nondegenerate on cyclic inputs.
    """
    ctx = E.ctx
    if E.A != ctx.one() or E.B != ctx.zero():
        raise UnsupportedParameterError(
            "distortion map is defined on y^2 = x^3 + x only")
    if P.infinity:
        return INFINITY
    E.check_point(P)
    return Point(-P.x, ctx.i() * P.y)


def modified_pairing(E: EllipticCurve, Q: Point, Qp: Point, n: int) -> RootOfUnity:
    """Distortion-modified pairing e_n(Q, psi(Q')), nonzero on the diagonal."""
    return weil_pairing(E, Q, distortion_map(E, Qp), n)


def _prime_power(n: int) -> tuple[int, int]:
    if n < 2:
        raise ValueError("order must be a prime power >= 2")
    ell = _smallest_prime_factor(n)
    e = 0
    m = n
    while m % ell == 0:
        m //= ell
        e += 1
    if m != 1:
        raise ValueError(f"{n} is not a prime power")
    return ell, e


def symmetric_pairing(E: EllipticCurve, G: Point, H: Point,
                      P: Point, Q: Point, n: int) -> RootOfUnity:
    """Symmetric pairing on span(G, H): e(P, psi(Q)) with the basis map
    psi([u]G + [v]H) = [v]G - [u]H.

    Symmetry needs psi to have no eigenvectors, i.e. x^2 + 1 must have
    no root modulo the prime underlying n; parameter sets where the
    prime is 2 or is 1 mod 4 are rejected.
    """
    ell, _ = _prime_power(n)
    if ell == 2 or ell % 4 == 1:
        raise UnsupportedParameterError(
            f"x^2 + 1 has a root mod {ell}; symmetric pairing undefined")
    d = decompose_in_basis(E, G, H, Q, n)
    image = E.sub(E.mul(d.v, G), E.mul(d.u, H))
    return weil_pairing(E, P, image, n)


def _dlog_prime_power(base: Fp2, target: Fp2, ell: int, e: int) -> int:
    """x with base^x = target, digit by digit in the order-ell^e subgroup.

    base must have exact order ell^e.
    """
    one = base.ctx.one()
    gamma = base ** (ell ** (e - 1))
    digit_table = {}
    g = one
    for d in range(ell):
        digit_table[g] = d
        g = g * gamma
    x = 0
    for i in range(e):
        c = (target * base ** (-x)) ** (ell ** (e - 1 - i))
        if c not in digit_table:
            raise DecompositionError("target outside the subgroup of the base")
        x += digit_table[c] * ell ** i
    return x


def decompose_in_basis(E: EllipticCurve, G: Point, H: Point,
                       P: Point, n: int) -> BasisDecomposition:
    """Coefficients (u, v) with P = [u]G + [v]H, for a certified basis (G, H).

    Reduces to discrete logs among roots of unity: u is the log of
    e(P, H) and v the log of e(G, P), both to base e(G, H).  The smooth
    order makes the logs exact via per-digit search.  The result is
    verified by recombination before it is returned.
    """
    ell, e = _prime_power(n)
    zeta = weil_pairing(E, G, H, n).value
    if zeta ** (n // ell) == E.ctx.one():
        raise DecompositionError("basis pairing does not have full order")
    u = _dlog_prime_power(zeta, weil_pairing(E, P, H, n).value, ell, e)
    v = _dlog_prime_power(zeta, weil_pairing(E, G, P, n).value, ell, e)
    if E.add(E.mul(u, G), E.mul(v, H)) != P:
        raise DecompositionError("recombination mismatch")
    return BasisDecomposition(u, v)
