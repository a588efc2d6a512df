"""Public parameters and the plain two-party isogeny key exchange the
oblivious-transfer layer is built on.

Parameters fix a prime p = lA^eA * lB^eB * f - 1 with p = 3 (mod 4),
the curve E0: y^2 = x^3 + x over F_{p^2} (group structure
(Z/(p+1))^2), and certified torsion bases for both sides.  Side "A"
works with lA^eA-torsion, side "B" with lB^eB-torsion; each side's
public key is its codomain curve together with the images of the other
side's basis.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .curve import EllipticCurve, Point, INFINITY, sample_torsion_basis
from .errors import (
    DecodeError,
    InvalidPointError,
    ParameterSearchError,
    ProtocolAbort,
    UnsupportedParameterError,
)
from .field import FieldContext, Fp2, is_prime
from .isogeny import IsogenyChain, evaluate, isogeny_chain, kernel_generator
from .util import det_rng

SIDES = ("A", "B")


@dataclass(frozen=True)
class SidhPublic:
    """One side's public key: codomain curve and pushed-through basis."""

    curve: EllipticCurve
    G: Point
    H: Point


@dataclass(frozen=True)
class PublicParams:
    p: int
    ell_a: int
    e_a: int
    ell_b: int
    e_b: int
    f: int
    curve: EllipticCurve
    basis_a: tuple[Point, Point]
    basis_b: tuple[Point, Point]

    @property
    def ctx(self) -> FieldContext:
        return self.curve.ctx

    @property
    def group_exponent(self) -> int:
        return self.p + 1

    def n(self, side: str) -> int:
        if side == "A":
            return self.ell_a ** self.e_a
        if side == "B":
            return self.ell_b ** self.e_b
        raise ValueError(f"unknown side {side!r}")

    def ell(self, side: str) -> int:
        return self.ell_a if side == "A" else self.ell_b

    def e(self, side: str) -> int:
        return self.e_a if side == "A" else self.e_b

    def basis(self, side: str) -> tuple[Point, Point]:
        return self.basis_a if side == "A" else self.basis_b


@dataclass(frozen=True)
class SidhKeyPair:
    side: str
    r: int
    chain: IsogenyChain
    public: SidhPublic


def other_side(side: str) -> str:
    return "B" if side == "A" else "A"


def _check_shape(ell_a, e_a, ell_b, e_b) -> None:
    for ell, e in ((ell_a, e_a), (ell_b, e_b)):
        if not is_prime(ell):
            raise UnsupportedParameterError(f"{ell} is not prime")
        if e < 1:
            raise UnsupportedParameterError("exponent must be >= 1")
        if ell == 2 and e < 4:
            raise UnsupportedParameterError(
                "the prime 2 needs exponent >= 4 for a usable torsion tower")
    if ell_a == ell_b:
        raise UnsupportedParameterError("the two primes must differ")


def gen_params(ell_a: int, e_a: int, ell_b: int, e_b: int,
               max_f: int = 4, rng=None, general_f: bool = False
               ) -> PublicParams:
    """Search the smallest admissible cofactor f and build parameters.

    By default f ranges over {1, 4} only; general_f opens the search to
    every f <= max_f.  Admissible means p = lA^eA*lB^eB*f - 1 is prime
    and 3 mod 4.  Bases are sampled with the given rng and certified by
    the pairing order test.
    """
    _check_shape(ell_a, e_a, ell_b, e_b)
    rng = rng if rng is not None else det_rng(None)
    base = ell_a ** e_a * ell_b ** e_b
    candidates = range(1, max_f + 1) if general_f else (1, 4)
    p = None
    chosen_f = None
    for f in candidates:
        if f > max_f:
            continue
        q = base * f - 1
        if q % 4 == 3 and q > 4 and is_prime(q):
            p, chosen_f = q, f
            break
    if p is None:
        raise ParameterSearchError(
            f"no admissible cofactor <= {max_f} for {ell_a}^{e_a}*{ell_b}^{e_b}")
    ctx = FieldContext(p)
    curve = EllipticCurve(ctx.one(), ctx.zero())
    exponent = p + 1
    basis_a = sample_torsion_basis(curve, ell_a, e_a, exponent, rng)
    basis_b = sample_torsion_basis(curve, ell_b, e_b, exponent, rng)
    return PublicParams(p, ell_a, e_a, ell_b, e_b, chosen_f, curve,
                        basis_a, basis_b)


# Named presets; fixed seeds keep every run and process in agreement.
_PRESETS = {
    "p431": ((2, 4, 3, 3), b"preset/p431"),
    "p2591": ((2, 5, 3, 4), b"preset/p2591"),
}


@functools.lru_cache(maxsize=None)
def preset(name: str) -> PublicParams:
    if name not in _PRESETS:
        raise UnsupportedParameterError(
            f"unknown preset {name!r}; have {sorted(_PRESETS)}")
    (la, ea, lb, eb), seed = _PRESETS[name]
    return gen_params(la, ea, lb, eb, rng=det_rng(seed))


def keygen(params: PublicParams, side: str, rng) -> SidhKeyPair:
    """Secret scalar, secret chain, and the public pushed-through basis.

    The kernel generator P + [r]Q always has exact order for a certified
    basis; the resample loop only guards against degenerate inputs.
    """
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    n = params.n(side)
    ell, e = params.ell(side), params.e(side)
    P, Q = params.basis(side)
    P2, Q2 = params.basis(other_side(side))
    E0 = params.curve
    for _ in range(64):
        r = rng.randrange(n)
        K = kernel_generator(E0, P, r, Q)
        if not E0.mul(n // ell, K).infinity:
            break
    else:
        raise InvalidPointError("no maximal-order kernel generator found")
    chain = isogeny_chain(E0, K, ell, e)
    public = SidhPublic(chain.codomain, evaluate(chain, P2),
                        evaluate(chain, Q2))
    return SidhKeyPair(side, r, chain, public)


def validate_public(params: PublicParams, producer_side: str,
                    pub: SidhPublic) -> None:
    """The consumer-side checks: points on curve and in the right torsion.

    A public key from side s carries images of the other side's basis,
    so its points must be n(other(s))-torsion.  Failure aborts.
    """
    code = "bad-sender-key" if producer_side == "A" else "bad-receiver-key"
    n = params.n(other_side(producer_side))
    ell = params.ell(other_side(producer_side))
    try:
        pub.curve.check_point(pub.G)
        pub.curve.check_point(pub.H)
    except InvalidPointError as exc:
        raise ProtocolAbort(code, f"public point off curve: {exc}") from exc
    for name, pt in (("G", pub.G), ("H", pub.H)):
        if not pub.curve.mul(n, pt).infinity:
            raise ProtocolAbort(code, f"{name} is not {n}-torsion")
        if pub.curve.mul(n // ell, pt).infinity:
            raise ProtocolAbort(code, f"{name} does not have full order {n}")


def derive_shared_j(keypair: SidhKeyPair, their_public: SidhPublic,
                    params: PublicParams) -> Fp2:
    """Second-stage quotient: j-invariant both honest parties agree on."""
    validate_public(params, other_side(keypair.side), their_public)
    side = keypair.side
    K = kernel_generator(their_public.curve, their_public.G, keypair.r,
                         their_public.H)
    chain = isogeny_chain(their_public.curve, K, params.ell(side),
                          params.e(side))
    return chain.codomain.j_invariant()


# -- serialization ----------------------------------------------------

def elem_to_hex(x: Fp2) -> str:
    return x.hex()


def elem_from_hex(ctx: FieldContext, s: str) -> Fp2:
    if not isinstance(s, str) or len(s) != 4 * ctx.byte_width or \
            s != s.lower():
        raise DecodeError(f"field element hex must be {4 * ctx.byte_width} "
                          f"lowercase chars")
    try:
        return Fp2.from_hex(ctx, s)
    except ValueError as exc:
        raise DecodeError(f"bad field element: {exc}") from exc


def point_to_obj(P: Point) -> dict:
    if P.infinity:
        return {"inf": True}
    return {"x": elem_to_hex(P.x), "y": elem_to_hex(P.y)}


def point_from_obj(ctx: FieldContext, obj) -> Point:
    if not isinstance(obj, dict):
        raise DecodeError("point must be an object")
    if obj.get("inf"):
        if set(obj) != {"inf"}:
            raise DecodeError("infinity point carries no coordinates")
        return INFINITY
    if set(obj) != {"x", "y"}:
        raise DecodeError("point object needs exactly x and y")
    return Point(elem_from_hex(ctx, obj["x"]), elem_from_hex(ctx, obj["y"]))


def public_to_obj(pub: SidhPublic) -> dict:
    return {
        "curve": {"a": elem_to_hex(pub.curve.A), "b": elem_to_hex(pub.curve.B)},
        "g": point_to_obj(pub.G),
        "h": point_to_obj(pub.H),
    }


def public_from_obj(ctx: FieldContext, obj) -> SidhPublic:
    if not isinstance(obj, dict) or set(obj) != {"curve", "g", "h"}:
        raise DecodeError("public key needs curve, g, h")
    cv = obj["curve"]
    if not isinstance(cv, dict) or set(cv) != {"a", "b"}:
        raise DecodeError("curve object needs exactly a and b")
    curve = EllipticCurve(elem_from_hex(ctx, cv["a"]),
                          elem_from_hex(ctx, cv["b"]))
    G = point_from_obj(ctx, obj["g"])
    H = point_from_obj(ctx, obj["h"])
    try:
        curve.check_point(G)
        curve.check_point(H)
    except InvalidPointError as exc:
        raise DecodeError(f"point not on declared curve: {exc}") from exc
    return SidhPublic(curve, G, H)


def params_to_obj(params: PublicParams) -> dict:
    return {
        "p": params.p,
        "la": params.ell_a, "ea": params.e_a,
        "lb": params.ell_b, "eb": params.e_b,
        "f": params.f,
        "e0": {"a": elem_to_hex(params.curve.A),
               "b": elem_to_hex(params.curve.B)},
        "pa": point_to_obj(params.basis_a[0]),
        "qa": point_to_obj(params.basis_a[1]),
        "pb": point_to_obj(params.basis_b[0]),
        "qb": point_to_obj(params.basis_b[1]),
    }


def params_from_obj(obj) -> PublicParams:
    want = {"p", "la", "ea", "lb", "eb", "f", "e0", "pa", "qa", "pb", "qb"}
    if not isinstance(obj, dict) or set(obj) != want:
        raise DecodeError("params object has wrong keys")
    ints = {k: obj[k] for k in ("p", "la", "ea", "lb", "eb", "f")}
    for k, v in ints.items():
        if not isinstance(v, int) or v < 1:
            raise DecodeError(f"params field {k} must be a positive integer")
    if ints["la"] ** ints["ea"] * ints["lb"] ** ints["eb"] * ints["f"] - 1 \
            != ints["p"]:
        raise DecodeError("params prime does not match its factorization")
    try:
        ctx = FieldContext(ints["p"])
    except ValueError as exc:
        raise DecodeError(f"bad prime: {exc}") from exc
    curve = EllipticCurve(elem_from_hex(ctx, obj["e0"]["a"]),
                          elem_from_hex(ctx, obj["e0"]["b"]))
    pts = {}
    for k in ("pa", "qa", "pb", "qb"):
        pts[k] = point_from_obj(ctx, obj[k])
        curve.check_point(pts[k])
    params = PublicParams(ints["p"], ints["la"], ints["ea"], ints["lb"],
                          ints["eb"], ints["f"], curve,
                          (pts["pa"], pts["qa"]), (pts["pb"], pts["qb"]))
    _certify_params(params)
    return params


def _certify_params(params: PublicParams) -> None:
    from .pairing import weil_pairing   # local: pairing imports curve

    for side in SIDES:
        n = params.n(side)
        ell = params.ell(side)
        P, Q = params.basis(side)
        for pt in (P, Q):
            if not params.curve.mul(n, pt).infinity:
                raise DecodeError(f"basis point not {n}-torsion")
        z = weil_pairing(params.curve, P, Q, n)
        if (z ** (n // ell)).is_one():
            raise DecodeError(f"side {side} basis fails independence")
