"""One-parameter families over F_{p^k}[t] and their fiberwise invariants.

A family lives in a ring with base variable s = t^{1/p^N}.  The relative
Cartier map phi produces a descending chain of images a_n (sigma side)
and, given a test-element seed, an ascending chain b_n (tau side).  Both
chains stabilize either globally, or generically (after inverting a
single nonzero element h of the base), and their stable values restrict
to the corresponding absolute invariants on every fiber from some
uniform level N on.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .absolute import sigma_absolute, tau_absolute, unit_ideal
from .frobenius import (CartierMap, PreconditionError, compose,
                        frobenius_root, image_ideal, relations_ideal)
from .groebner import Ideal, generically_equal
from .poly import Polynomial, RingError, RingSpec

FIBER_SCAN_CAP = 49


@dataclass(frozen=True)
class FiberPoint:
    """A closed point t = value of the base line, or the generic point."""

    value: int = 0
    generic: bool = False

    def label(self, fld):
        return "generic" if self.generic else "t=%s" % fld.repr_element(self.value)


@dataclass
class FamilySpec:
    """A relative Cartier map with an optional tau seed."""

    ring: RingSpec
    phi: CartierMap
    seed: Ideal = None


@dataclass
class ChainReport:
    mode: str
    levels: list
    stabilization_index: int = None
    stabilization_kind: str = "none-within-cap"
    open_locus_witness: Polynomial = None
    fiber_results: dict = field(default_factory=dict)
    restriction_N: int = None


def sigma_chain(phi, n_max):
    """[(n, a_n)] for n = 1..n_max, a_n = Image(phi^n), checked descending."""
    unit = unit_ideal(phi.ring)
    levels = []
    prev = unit
    for n in range(1, n_max + 1):
        a_n = image_ideal(phi, unit, n)
        if not prev.contains(a_n):
            raise PreconditionError("sigma chain is not descending at level %d" % n)
        levels.append((n, a_n))
        prev = a_n
    return levels


def tau_chain(phi, seed, n_max):
    """[(n, b_n)], b_n = sum of Image(phi^i) applied to the seed, i <= n."""
    if seed is None or seed.is_zero():
        raise PreconditionError("tau chain needs a nonzero seed")
    current = image_ideal(phi, seed, 0)
    levels = []
    for n in range(1, n_max + 1):
        nxt = current.plus(image_ideal(phi, seed, n)).reduced()
        if not nxt.contains(current):
            raise PreconditionError("tau chain is not ascending at level %d" % n)
        levels.append((n, nxt))
        current = nxt
    return levels


def min_t_power(I, ne=0):
    """Least c with t^c in I, as a fraction in (1/p^{ne})-units.

    Exponents are measured at the source scale of the ne-fold rooted
    base: the contraction of I to F_{p^k}[s] is principal, and a
    monomial generator s^m yields c = m / p^{N-ne}.  Returns None when
    no pure power of t lies in I.
    """
    ring = I.ring
    if ne > ring.depth:
        raise PreconditionError("level exceeds the base-root depth")
    contracted = I.contract_to_base().reduced()
    if contracted.is_zero():
        return None
    gens = contracted.generators
    if len(gens) != 1:
        raise PreconditionError("base contraction is not principal")
    h = gens[0]
    if len(h.terms) != 1:
        return None
    (mono,) = h.terms
    return Fraction(mono[0], ring.field.p ** (ring.depth - ne))


def detect_stabilization(levels):
    """(n0, kind, witness): least level from which the chain is constant.

    Global equality is sought first; failing that, equality after
    inverting the base, witnessed by a product h of base elements so
    that the chain is constant on the locus where h is nonzero.
    Persistence is required against every computed higher level.
    """
    ideals = [I for _, I in levels]
    count = len(levels)
    for idx in range(count - 1):
        if all(ideals[idx].equals(ideals[j]) for j in range(idx + 1, count)):
            return levels[idx][0], "global", None
    for idx in range(count - 1):
        witness = None
        for j in range(idx + 1, count):
            eq, h = generically_equal(ideals[idx], ideals[j])
            if not eq:
                witness = None
                break
            witness = h if witness is None else witness * h
        if witness is not None:
            return levels[idx][0], "generic", witness
    return None, "none-within-cap", None


def relative_test_seed(ring, power=1):
    """Seed from the fiberwise Jacobian: x-partials of the relations.

    An empty relation list (smooth total space over the base) gives the
    unit ideal.
    """
    rels = ring.relations
    if not rels:
        return unit_ideal(ring)
    partials = [f.derivative(v) for f in rels for v in ring.x_vars]
    jac = Ideal(ring, partials)
    if relations_ideal(ring).contains(jac):
        raise PreconditionError("fiberwise Jacobian vanishes mod relations")
    if power > 1:
        base = jac
        for _ in range(power - 1):
            jac = jac.times(base)
    return jac.plus(relations_ideal(ring))


def fiber_ring(ring):
    fr = RingSpec(ring.field, ring.x_vars, has_base=False, e=ring.e)
    return fr


def restrict_fiber(obj, point, target=None):
    """Specialize an ideal or Cartier map at a closed fiber t = value.

    Substitutes s by the p^N-th root of the value; the generic point
    returns the object unchanged.
    """
    if point.generic:
        return obj
    if isinstance(obj, CartierMap):
        ring = obj.ring
        fr = target or fiber_ring(ring)
        if ring.relations and not fr.relations:
            fr.set_relations(
                [r.substitute({"t": point.value}, fr) for r in ring.relations
                 if not r.substitute({"t": point.value}, fr).is_zero()])
        u0 = obj.u.substitute({"t": point.value}, fr)
        return CartierMap(fr, obj.e, u0, relative=False)
    ring = obj.ring
    fr = target or fiber_ring(ring)
    gens = [g.substitute({"t": point.value}, fr) for g in obj.generators]
    return Ideal(fr, [g for g in gens if not g.is_zero()])


def _fiber_invariant(spec, point, seed=None):
    """(stable fiber ideal, fiber hsl, fiber ring) at a closed point."""
    fr = fiber_ring(spec.ring)
    psi = restrict_fiber(spec.phi, point, target=fr)
    if seed is None:
        sigma, hsl, _ = sigma_absolute(psi)
        return sigma, hsl, fr
    seed0 = restrict_fiber(seed, point, target=fr)
    tau = tau_absolute(psi, seed0)
    _, hsl, _ = sigma_absolute(psi)
    return tau, hsl, fr


def verify_restriction_theorem(spec, n_max, mode="sigma"):
    """Smallest uniform level N with a_n|fiber = fiber invariant for n >= N.

    Scans every closed point of the base line (field size capped at
    49); returns (N, fiber_results) or (None, fiber_results) when some
    fiber fails to match within n_max.
    """
    ring = spec.ring
    fld = ring.field
    size = fld.p ** fld.k
    if size > FIBER_SCAN_CAP:
        raise PreconditionError("fiber scan over %d points exceeds cap" % size)
    if mode == "sigma":
        levels = sigma_chain(spec.phi, n_max)
    else:
        levels = tau_chain(spec.phi, spec.seed, n_max)
    fiber_results = {}
    worst = 0
    failed = False
    for value in fld.elements():
        point = FiberPoint(value)
        target, hsl, fr = _fiber_invariant(
            spec, point, spec.seed if mode == "tau" else None)
        restricted = [(n, restrict_fiber(a_n, point, target=fr))
                      for n, a_n in levels]
        match_n = None
        for idx in range(len(restricted)):
            if all(restricted[j][1].equals(target)
                   for j in range(idx, len(restricted))):
                match_n = restricted[idx][0]
                break
        fiber_results[point] = {"invariant": target, "hsl": hsl,
                                "match_level": match_n}
        if match_n is None:
            failed = True
        else:
            worst = max(worst, match_n)
    return (None if failed else worst), fiber_results


def hsl_uniform_bound(spec, n_max, restriction_n=None):
    """Max fiber HSL number; must not exceed the restriction level N."""
    n, fibers = verify_restriction_theorem(spec, n_max)
    bound = max(res["hsl"] for res in fibers.values())
    check = restriction_n if restriction_n is not None else n
    if check is not None and bound > check:
        raise PreconditionError(
            "fiber HSL %d exceeds restriction level %d" % (bound, check))
    return bound


def absolutize_and_compare(spec, n):
    """Image of the absolute map gamma^n on the n-fold rooted base vs a_n.

    gamma^n shares the multiplier of phi^n but traces over the base as
    well, with s measured in units of t^{1/p^{ne}}.  Returns
    (absolute image, a_n, equal?).
    """
    phi = spec.phi
    ring = phi.ring
    if phi.e * n > ring.depth:
        raise PreconditionError("depth too small for level %d" % n)
    s_unit = ring.field.p ** (ring.depth - phi.e * n)
    gamma = replace(phi, relative=False)
    image_abs = image_ideal(gamma, unit_ideal(ring), n, s_unit=s_unit)
    a_n = image_ideal(phi, unit_ideal(ring), n)
    return image_abs, a_n, image_abs.equals(a_n)


def relative_flags(spec, n_max):
    """Family-level F-singularity flags read off the relative chains."""
    flags = {}
    sig = sigma_chain(spec.phi, n_max)
    flags["sharply_f_pure"] = any(I.is_unit() for _, I in sig)
    seed = spec.seed if spec.seed is not None else relative_test_seed(spec.ring)
    tau = tau_chain(spec.phi, seed, n_max)
    flags["strongly_f_regular"] = any(I.is_unit() for _, I in tau)
    rels = spec.ring.relations
    if len(rels) <= 1:
        q = spec.ring.field.p ** spec.phi.e
        u = rels[0] ** (q - 1) if rels else spec.ring.one()
        omega = CartierMap(spec.ring, spec.phi.e, u, relative=True)
        flags["f_injective"] = any(
            I.is_unit() for _, I in sigma_chain(omega, n_max))
        flags["f_rational"] = any(
            I.is_unit() for _, I in tau_chain(omega, seed, n_max))
    return flags
