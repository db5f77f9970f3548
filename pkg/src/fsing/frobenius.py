"""The p^{-e}-linear calculus.

A Cartier map phi is stored by its step e and multiplier u, meaning
phi(-) = Tr_e(u^{1/p^e} . -).  Composition multiplies the step count and
raises u to (p^{ne}-1)/(p^e-1).  Images of ideals under phi^n are
Frobenius-root extractions: the root of a principal ideal <f> is read
off by splitting f into exponent-residue classes, which form a free
basis of the ambient polynomial ring over its ring of q-th powers.

Relative mode (over the base line, s = t^{1/p^N}) splits residues on the
fiber variables only and divides s-exponents by q outright; absolute
mode splits every exponent.  For the comparison with the absolute map on
a partially-rooted base, absolute roots accept an s_unit so that s
exponents are measured in units of t^{1/p^{ne}}.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .groebner import GroebnerError, Ideal, normal_form
from .poly import MonomialOrder, Polynomial, RingError

COMPOSE_EXPONENT_GUARD = 1 << 20


class PreconditionError(RuntimeError):
    """A mathematical precondition failed (CLI exit code 2)."""


def relations_ideal(ring):
    if ring._rel_ideal is None:
        ring._rel_ideal = Ideal(ring, ring.relations)
    return ring._rel_ideal


@dataclass(frozen=True)
class CartierMap:
    """phi(-) = Tr_e(u^{1/p^e} . -), targeting R tensor A^{1/p^{ne}}.

    relative maps fix the base (trace over fiber variables only);
    absolute maps trace over every variable.
    """

    ring: object
    e: int
    u: Polynomial
    level: int = 1
    relative: bool = False

    def __post_init__(self):
        if self.e < 1:
            raise PreconditionError("Cartier map step must be >= 1")
        if self.relative and not self.ring.has_base:
            raise PreconditionError("relative map needs a base variable")

    @property
    def mode(self):
        return "relative" if self.relative else "absolute"

    def check_well_defined(self):
        """u . I must lie in I^{[p^e]} for the map to descend to S/I."""
        rels = self.ring.relations
        if not rels:
            return
        q = self.ring.field.p ** self.e
        bracket = bracket_power(relations_ideal(self.ring), q, self.mode)
        for g in rels:
            if not bracket.contains_poly(self.u * g):
                raise PreconditionError(
                    "multiplier does not descend: u*(%s) is not in I^[%d]" % (g, q))


def _p_log(p, q):
    j = 0
    while q > 1 and q % p == 0:
        q //= p
        j += 1
    if q != 1:
        raise PreconditionError("%d is not a power of p" % q)
    return j


def bracket_power(I, q, mode="absolute"):
    """I^{[q]}: generators raised to the q-th power (q a p-power)."""
    ring = I.ring
    _p_log(ring.field.p, q)
    return Ideal(ring, [g ** q for g in I.generators])


def _root_of_poly(f, q, mode, s_unit=1):
    """Generators of the smallest J with f in J^{[q]} (residue splitting)."""
    ring = f.ring
    F = ring.field
    steps = _p_log(F.p, q)
    nx = len(ring.x_vars)
    s_idx = ring.s_index if ring.has_base else None
    classes = {}
    for m, c in f.terms.items():
        xs = m[:nx]
        res = tuple(x % q for x in xs)
        root = [(x - r) // q for x, r in zip(xs, res)]
        if s_idx is not None:
            se = m[s_idx]
            if mode == "relative":
                if se % q:
                    raise PreconditionError(
                        "depth exhausted: s-exponent %d not divisible by %d" % (se, q))
                root.append(se // q)
                key = res
            else:
                if se % s_unit:
                    raise PreconditionError(
                        "s-exponent %d not divisible by the root unit %d" % (se, s_unit))
                scaled = se // s_unit
                sres = scaled % q
                root.append((scaled - sres) // q * s_unit)
                key = res + (sres,)
        else:
            key = res
        cls = classes.setdefault(key, {})
        mono = tuple(root)
        prev = cls.get(mono)
        val = F.frobenius_inverse(c, steps)
        cls[mono] = F.add(prev, val) if prev is not None else val
    out = []
    for key in sorted(classes):
        g = Polynomial(ring, classes[key])
        if not g.is_zero():
            out.append(g)
    return out


def frobenius_root(I, q, mode="absolute", s_unit=1):
    """The smallest ideal J with I contained in bracket_power(J, q, mode)."""
    if mode == "relative" and not I.ring.has_base:
        raise RingError("relative root needs a base variable")
    gens = []
    for g in I.generators:
        gens.extend(_root_of_poly(g, q, mode, s_unit))
    return Ideal(I.ring, gens)


def compose(phi, n):
    """phi^n: same step, level n, multiplier u^{(p^{ne}-1)/(p^e-1)}."""
    if n < 1:
        raise PreconditionError("composition steps must be >= 1")
    p = phi.ring.field.p
    q_e = p ** phi.e
    exponent = (q_e ** n - 1) // (q_e - 1)
    if exponent > COMPOSE_EXPONENT_GUARD:
        raise PreconditionError("composed multiplier exponent %d too large" % exponent)
    return replace(phi, u=phi.u ** exponent, level=n)


def fedder_ideal(I, e):
    """(I^{[p^e]} : I); the unit ideal when I = 0."""
    if I.is_zero():
        return Ideal(I.ring, [I.ring.one()])
    q = I.ring.field.p ** e
    return bracket_power(I, q, "absolute").colon(I)


def image_ideal(phi, J, n, s_unit=1):
    """Image of phi^n on (J . L^{(p^{ne}-1)/(p^e-1)})^{1/p^{ne}}, mod relations.

    Equals frobenius_root(<u_n> . J, p^{ne}) + I, reduced to normal form
    modulo the relations; valid on the quotient because u_n . I lies in
    I^{[p^{ne}]} whenever phi is well defined.
    """
    ring = phi.ring
    p = ring.field.p
    if n == 0:
        root = J
    else:
        if phi.relative and phi.e * n > ring.depth:
            raise PreconditionError(
                "depth %d cannot host level %d (need >= %d)"
                % (ring.depth, n, phi.e * n))
        un = compose(phi, n).u
        q = p ** (phi.e * n)
        scaled = Ideal(ring, [un * g for g in J.generators])
        root = frobenius_root(scaled, q, phi.mode, s_unit)
    rels = relations_ideal(ring)
    if ring.relations:
        order = MonomialOrder.grevlex()
        gb = list(rels.groebner(order))
        gens = []
        for g in root.generators:
            h = normal_form(g, gb, order)
            if not h.is_zero() and h not in gens:
                gens.append(h)
        return Ideal(ring, gens + list(ring.relations))
    return root
