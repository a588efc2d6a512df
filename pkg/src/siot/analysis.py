"""Adversarial probes and brute-force oracles, all desk-scale.

Nothing here is a security proof; the scans demonstrate, on toy
parameters, that the mask constraints do what they claim: the pairing
probe available to the sender cannot see the receiver's bit, a cheating
receiver cannot collapse the sender's two kernels into one, and the
underlying search problems are only tractable because the parameters
are tiny.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .curve import EllipticCurve, Point
from .errors import InconsistentKeyError, UnsupportedParameterError
from .isogeny import (
    cyclic_subgroup,
    evaluate,
    full_kernel_quotient,
    isogeny_chain,
    kernel_generator,
)
from .pairing import decompose_in_basis, weil_pairing
from .sidh import PublicParams, SidhPublic, keygen, other_side
from .siot import MaskCoefficients, MaskPoints, encode_mask_points
from .util import det_rng


@dataclass(frozen=True)
class DistinguisherReport:
    """Outcome of the pairing sweep over the masking parameter lambda.

    For every lambda two hypotheses are evaluated against the public
    target value: "the transcript pair is unmasked" and "the transcript
    pair is masked".  The bit leaks exactly when some lambda separates
    them.
    """

    lambdas: tuple
    verdicts: dict
    separations: tuple
    verdict: str

    def to_obj(self) -> dict:
        return {
            "lambdas": list(self.lambdas),
            "verdicts": {str(k): list(v) for k, v in self.verdicts.items()},
            "separations": list(self.separations),
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class OracleResult:
    r: int
    space: int
    seconds: float


def equivariance_precheck(params: PublicParams, rng=None) -> None:
    """Assert e(phi(P), phi(Q)) = e(P, Q)^(deg phi) on a fresh keypair.

    The distinguisher's target value rests on this relation; it is
    re-verified from scratch before any scan trusts it.
    """
    rng = rng if rng is not None else det_rng(b"equivariance-precheck")
    n = params.n("A")
    P, Q = params.basis_a
    kp = keygen(params, "B", rng)
    lhs = weil_pairing(kp.public.curve, kp.public.G, kp.public.H, n)
    rhs = weil_pairing(params.curve, P, Q, n) ** kp.chain.degree
    if lhs != rhs:
        raise AssertionError("pairing does not commute with the isogeny "
                             "at the expected exponent")


def _lambda_values(n: int, count: int, rng) -> tuple:
    if n <= 256:
        return tuple(range(n))
    units = [v for v in rng.sample(range(1, n), min(count, n - 1))]
    picked = set()
    for v in units:
        picked.add(v)
        if len(picked) >= count - count // 3:
            break
    while len(picked) < count:
        v = rng.randrange(n)
        picked.add(v)
    return tuple(sorted(picked))


def distinguisher_scan(params: PublicParams, masked_public: SidhPublic,
                       mask, lambda_count: int = 64,
                       rng=None) -> DistinguisherReport:
    """Sweep e(G' + lambda*U, H' + lambda*V) against the public target.

    masked_public is the receiver key as seen on the wire; mask is
    either the MaskPoints both parties can derive or the
    MaskCoefficients to derive them from the transcript pair (which is
    exactly what a curious sender would do).  Hypothesis 0 treats the
    transcript pair as unmasked, hypothesis 1 as masked; a compliant
    mask family makes the two sweeps identical for every lambda.
    """
    rng = rng if rng is not None else det_rng(b"distinguisher-scan")
    equivariance_precheck(params, rng)
    n = params.n("A")
    E = masked_public.curve
    G, H = masked_public.G, masked_public.H
    if isinstance(mask, MaskCoefficients):
        mask = encode_mask_points(mask, E, G, H, params)
    if not isinstance(mask, MaskPoints):
        raise TypeError("mask must be MaskPoints or MaskCoefficients")
    U, V = mask.U, mask.V
    PA, QA = params.basis_a
    target = weil_pairing(params.curve, PA, QA, n) ** params.n("B")
    G1, H1 = E.add(G, U), E.add(H, V)
    lambdas = _lambda_values(n, lambda_count, rng)
    verdicts = {}
    separations = []
    for lam in lambdas:
        lamU, lamV = E.mul(lam, U), E.mul(lam, V)
        v0 = weil_pairing(E, E.add(G, lamU), E.add(H, lamV), n)
        v1 = weil_pairing(E, E.add(G1, lamU), E.add(H1, lamV), n)
        verdicts[lam] = (v0 == target, v1 == target)
        if v0 != v1:
            separations.append(lam)
    verdict = "leaked-b" if separations else "indistinguishable"
    return DistinguisherReport(lambdas, verdicts, tuple(separations), verdict)


def distinguisher_fixture(params: PublicParams, rng=None, b: int = 1,
                          violate: bool = False):
    """A receiver transcript to aim the scan at.

    Honest path: coefficients derived from a random w, mask applied for
    the chosen bit.  Violating path: a tuple breaking delta = -alpha,
    which makes the pairing exponent move with lambda and leaks the bit.
    Returns (masked_public, coeffs).
    """
    from .siot import derive_mask_coeffs

    rng = rng if rng is not None else det_rng(b"distinguisher-fixture")
    kp = keygen(params, "B", rng)
    pub = kp.public
    if violate:
        n = params.n("A")
        coeffs = MaskCoefficients(alpha=0, beta=1, gamma=0, delta=2 % n,
                                  w=b"")
    else:
        coeffs = derive_mask_coeffs(rng.randbytes(32), params)
    mask = encode_mask_points(coeffs, pub.curve, pub.G, pub.H, params)
    if b == 1:
        masked = SidhPublic(pub.curve, pub.curve.sub(pub.G, mask.U),
                            pub.curve.sub(pub.H, mask.V))
    else:
        masked = pub
    return masked, coeffs


def same_cyclic_subgroup(E: EllipticCurve, basis, K1: Point, K2: Point,
                         n: int) -> bool:
    """Whether <K1> = <K2> inside the torsion spanned by the basis."""
    G, H = basis
    d1 = decompose_in_basis(E, G, H, K1, n)
    d2 = decompose_in_basis(E, G, H, K2, n)
    if (d1.u * d2.v - d1.v * d2.u) % n != 0:
        return False
    return _tuple_order(d1, n) == _tuple_order(d2, n)


def _tuple_order(d, n: int) -> int:
    from math import gcd

    g = gcd(gcd(d.u, d.v), n)
    return n // g


def dishonest_bob_probe(params: PublicParams, rng=None) -> dict:
    """Exercise the kernel-collapse condition from both directions.

    Honest fixture: protocol coefficients leave the collapse quadratic
    rootless and the sender's two j-invariants distinct, and a receiver
    key opens exactly one ciphertext.  Positive control: coefficients
    crafted against the fixture's sender secret (det = 0, unit ratio)
    make both kernels literally the same subgroup, hence equal j.
    Degenerate control: all-zero coefficients collapse trivially.
    """
    from .errors import DecryptionError
    from .siot import derive_mask_coeffs, kdf_dec, kdf_enc

    rng = rng if rng is not None else det_rng(b"dishonest-bob-probe")
    n = params.n("A")
    ell, e = params.ell_a, params.e_a
    sender = keygen(params, "A", rng)
    receiver = keygen(params, "B", rng)
    w = rng.randbytes(32)
    coeffs = derive_mask_coeffs(w, params)
    E = receiver.public.curve
    G, H = receiver.public.G, receiver.public.H
    basis = (G, H)
    r_a = sender.r

    def branch_kernels(cf):
        mask = encode_mask_points(cf, E, G, H, params)
        K0 = kernel_generator(E, G, r_a, H)
        K1 = kernel_generator(E, E.add(G, mask.U), r_a, E.add(H, mask.V))
        return K0, K1

    def branch_js(K0, K1):
        out = []
        for K in (K0, K1):
            out.append(isogeny_chain(E, K, ell, e).codomain.j_invariant())
        return out

    report: dict = {}
    K0, K1 = branch_kernels(coeffs)
    j0, j1 = branch_js(K0, K1)
    k0 = kdf_enc(j0, b"probe-x0")
    k1 = kdf_enc(j1, b"probe-x1")
    opened = []
    for c in (k0, k1):
        try:
            kdf_dec(j0, c)
            opened.append(True)
        except DecryptionError:
            opened.append(False)
    report["honest"] = {
        "quad_root_free": coeffs.quadratic_root_free(ell),
        "kernels_same_subgroup": same_cyclic_subgroup(E, basis, K0, K1, n),
        "j_equal": j0 == j1,
        "opens_under_j0": opened,
    }

    # crafted: det(K0, K1) = 0 with a unit ratio, so <K1> = <K0> exactly
    crafted = MaskCoefficients(alpha=2 % n, beta=2 * r_a % n, gamma=0,
                               delta=0, w=b"")
    Kc0, Kc1 = branch_kernels(crafted)
    cj0, cj1 = branch_js(Kc0, Kc1)
    report["crafted"] = {
        "alpha": crafted.alpha, "beta": crafted.beta,
        "quad_has_root": not crafted.quadratic_root_free(ell),
        "kernels_same_subgroup": same_cyclic_subgroup(E, basis, Kc0, Kc1, n),
        "j_equal": cj0 == cj1,
    }

    zero = MaskCoefficients(0, 0, 0, 0, b"")
    Kz0, Kz1 = branch_kernels(zero)
    zj0, zj1 = branch_js(Kz0, Kz1)
    report["degenerate"] = {"j_equal": zj0 == zj1}
    return report


_TOY_LIMIT = 1 << 16


def brute_force_secret(params: PublicParams, public: SidhPublic,
                       side: str) -> OracleResult:
    """Recover the secret scalar behind a public key by exhaustive sweep.

    Test oracle only; refuses parameter sets beyond toy scale.  The
    recovered scalar regenerates the public key exactly (same curve
    coefficients and basis images), not merely up to isomorphism.
    """
    n = params.n(side)
    if n > _TOY_LIMIT:
        raise UnsupportedParameterError(
            f"search space {n} exceeds the toy-scale bound {_TOY_LIMIT}")
    ell, e = params.ell(side), params.e(side)
    P, Q = params.basis(side)
    P2, Q2 = params.basis(other_side(side))
    E0 = params.curve
    started = time.perf_counter()
    for r in range(n):
        K = kernel_generator(E0, P, r, Q)
        if E0.mul(n // ell, K).infinity:
            continue
        chain = isogeny_chain(E0, K, ell, e)
        if chain.codomain != public.curve:
            continue
        if evaluate(chain, P2) == public.G and evaluate(chain, Q2) == public.H:
            return OracleResult(r, n, time.perf_counter() - started)
    raise InconsistentKeyError("no scalar regenerates the given public key")


def symmetric_constraint_check(params: PublicParams,
                               coeffs: MaskCoefficients) -> bool:
    """Whether the coefficients satisfy the symmetric-pairing identity
    (1 + lambda*alpha)(1 + lambda*delta) + lambda^2*beta*gamma = 1 for
    every lambda, and alpha lies in the hardened family."""
    n = params.n("A")
    ell, e = params.ell_a, params.e_a
    if coeffs.alpha % ell ** ((e + 1) // 2) != 0:
        return False
    lams = range(n) if n <= 4096 else \
        det_rng(b"symmetric-lams").sample(range(n), 1000)
    a, b, g, d = coeffs.alpha, coeffs.beta, coeffs.gamma, coeffs.delta
    return all(
        ((1 + lam * a) * (1 + lam * d) + lam * lam * b * g) % n == 1 % n
        for lam in lams)


# -- toy problem oracles ------------------------------------------------

def shared_j_oracle(params: PublicParams, r_a: int, r_b: int):
    """The exchange's shared j computed the blunt way: one quotient by
    the group generated by both kernels at once.  Correctness oracle for
    the two-stage derivation, feasible only at toy scale."""
    E0 = params.curve
    na, nb = params.n("A"), params.n("B")
    if na * nb > 4096:
        raise UnsupportedParameterError("double-kernel quotient is toy-only")
    PA, QA = params.basis_a
    PB, QB = params.basis_b
    KA = kernel_generator(E0, PA, r_a, QA)
    KB = kernel_generator(E0, PB, r_b, QB)
    # coprime orders: the sum generates the full two-sided kernel
    K = E0.add(KA, KB)
    step = full_kernel_quotient(E0, cyclic_subgroup(E0, K, na * nb))
    return step.codomain.j_invariant()


def reachable_j_values(params: PublicParams, side: str) -> set:
    """All j-invariants one degree-ell^e step away from the base curve.

    Enumerates every cyclic order-ell^e subgroup (projective line over
    Z/ell^e) and quotients.  Decision oracle for isogeny existence at
    toy scale."""
    n = params.n(side)
    if n > 512:
        raise UnsupportedParameterError("isogeny walk enumeration is toy-only")
    ell, e = params.ell(side), params.e(side)
    P, Q = params.basis(side)
    E0 = params.curve
    out = set()
    for t in range(n):
        K = kernel_generator(E0, P, t, Q)
        out.add(isogeny_chain(E0, K, ell, e).codomain.j_invariant())
    for s in range(0, n, ell):
        K = E0.add(E0.mul(s, P), Q)
        out.add(isogeny_chain(E0, K, ell, e).codomain.j_invariant())
    return out


def isogeny_path_exists(params: PublicParams, side: str, j_target) -> bool:
    return j_target in reachable_j_values(params, side)
