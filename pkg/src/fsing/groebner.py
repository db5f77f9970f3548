"""Buchberger Groebner kernel: membership, equality, colon, elimination.

Reduced bases are unique per monomial order and computed
deterministically (pairs in normal selection order, output sorted by
leading monomial), so printed generators are bit-stable across runs.
Pair elimination uses the Gebauer-Moeller / Buchberger criteria.
"""

from __future__ import annotations

from bisect import insort

from .poly import (MonomialOrder, Polynomial, RingError, RingSpec,
                   mono_div, mono_divides, mono_lcm, mono_mul)

SATURATION_CAP = 64

AUX_VAR = "w0"


class GroebnerError(RuntimeError):
    pass


def _prepared(basis, order):
    """[(poly, lead mono, inverse lead coeff)] for the division loop."""
    out = []
    F = None
    for g in basis:
        if g.is_zero():
            continue
        F = g.ring.field
        m, c = g.leading(order)
        out.append((g, m, F.inv(c)))
    return out


def normal_form(f, basis, order):
    """Unique remainder of f modulo basis (full tail reduction)."""
    prep = basis if basis and isinstance(basis[0], tuple) else _prepared(basis, order)
    if not prep:
        return f
    ring = f.ring
    F = ring.field
    rem = {}
    work = f
    while not work.is_zero():
        m, c = work.leading(order)
        for g, gm, gc_inv in prep:
            if mono_divides(gm, m):
                work = work - g.mul_monomial(mono_div(m, gm), F.mul(c, gc_inv))
                break
        else:
            rem[m] = c
            work = Polynomial(ring, {mm: cc for mm, cc in work.terms.items() if mm != m})
    return Polynomial(ring, rem)


def _spoly(f, fm, fc_inv, g, gm, gc_inv, order):
    F = f.ring.field
    L = mono_lcm(fm, gm)
    return (f.mul_monomial(mono_div(L, fm), fc_inv)
            - g.mul_monomial(mono_div(L, gm), gc_inv))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(generators, order):
    """Reduced Groebner basis, sorted descending by leading monomial."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return ()
    ring = gens[0].ring
    F = ring.field

    # interreduce the input: cheap, and trims the large redundant
    # generator sets produced by Frobenius-root residue splitting
    gens.sort(key=lambda g: order.key(g.leading(order)[0]))
    basis = []
    for g in gens:
        h = normal_form(g, _prepared(basis, order), order)
        if not h.is_zero():
            basis.append(h)

    G = []           # (poly, lm, lc_inv)
    pairs = []       # entries (sortkey, i, j, lcm)

    def add_poly(h):
        hm, hc = h.leading(order)
        t = len(G)
        G.append((h, hm, F.inv(hc)))
        # Gebauer-Moeller pruning of the new pairs (h, g_i)
        cand = list(range(t))
        lcms = {i: mono_lcm(hm, G[i][1]) for i in cand}
        keep = []
        for i in cand:
            Li = lcms[i]
            # strict domination by another new pair
            if any(lcms[j] != Li and mono_divides(lcms[j], Li) for j in cand):
                continue
            # equal-lcm dedupe
            if any(lcms[j] == Li for j in keep):
                continue
            if _coprime(hm, G[i][1]):
                continue  # Buchberger's coprimality criterion
            keep.append(i)
        # chain criterion on old pairs
        survivors = []
        for entry in pairs:
            _, i, j, L = entry
            if (mono_divides(hm, L)
                    and mono_lcm(G[i][1], hm) != L
                    and mono_lcm(G[j][1], hm) != L):
                continue
            survivors.append(entry)
        pairs[:] = survivors
        for i in keep:
            L = lcms[i]
            insort(pairs, (order.key(L), i, t, L))

    for h in basis:
        add_poly(h)

    while pairs:
        _, i, j, L = pairs.pop(0)
        f, fm, fci = G[i]
        g, gm, gci = G[j]
        s = _spoly(f, fm, fci, g, gm, gci, order)
        h = normal_form(s, G, order)
        if not h.is_zero():
            add_poly(h)

    return _reduce_basis([g for g, _, _ in G], order)


def _reduce_basis(polys, order):
    """Minimalize and fully reduce; leading coefficients 1."""
    F = polys[0].ring.field if polys else None
    lead = [(g.leading(order)[0], g) for g in polys]
    minimal = []
    for m, g in sorted(lead, key=lambda t: order.key(t[0])):
        if not any(mono_divides(mm, m) for mm, _ in minimal):
            minimal.append((m, g))
    reduced = []
    for idx, (m, g) in enumerate(minimal):
        others = [h for i, (_, h) in enumerate(minimal) if i != idx]
        h = normal_form(g, _prepared(others, order), order)
        if h.is_zero():
            continue
        hm, hc = h.leading(order)
        reduced.append(h.scale(F.inv(hc)))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return tuple(reduced)


class Ideal:
    """Finite generating set plus a cached reduced Groebner basis."""

    __slots__ = ("ring", "generators", "_gb_cache")

    def __init__(self, ring, generators=()):
        self.ring = ring
        self.generators = tuple(g for g in generators if not g.is_zero())
        self._gb_cache = {}

    @classmethod
    def of(cls, ring, *gens):
        out = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            out.append(g)
        return cls(ring, out)

    def default_order(self):
        return MonomialOrder.grevlex()

    def groebner(self, order=None):
        order = order or self.default_order()
        sig = order.signature()
        if sig not in self._gb_cache:
            self._gb_cache[sig] = buchberger(self.generators, order)
        return self._gb_cache[sig]

    def normal_form(self, f, order=None):
        order = order or self.default_order()
        return normal_form(f, list(self.groebner(order)), order)

    def contains_poly(self, f, order=None):
        return self.normal_form(f, order).is_zero()

    def contains(self, other, order=None):
        return all(self.contains_poly(g, order) for g in other.generators)

    def equals(self, other, order=None):
        return self.contains(other, order) and other.contains(self, order)

    def is_zero(self):
        return not self.generators

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_one()

    def plus(self, other):
        return Ideal(self.ring, self.generators + other.generators)

    def times(self, other):
        gens = [f * g for f in self.generators for g in other.generators]
        return Ideal(self.ring, gens)

    def reduced(self, order=None):
        """Same ideal, regenerated from its reduced Groebner basis."""
        return Ideal(self.ring, self.groebner(order))

    # -- aux-variable constructions -------------------------------------

    def _aux_ring(self):
        ring = self.ring
        aux = RingSpec(ring.field, (AUX_VAR,) + ring.x_vars,
                       has_base=ring.has_base, depth=ring.depth, e=ring.e)
        return aux

    @staticmethod
    def _lift(f, aux):
        return Polynomial(aux, {(0,) + m: c for m, c in f.terms.items()})

    @staticmethod
    def _drop(f, ring):
        return Polynomial(ring, {m[1:]: c for m, c in f.terms.items()})

    def intersect(self, other):
        """I cap J via the single auxiliary variable trick."""
        aux = self._aux_ring()
        w = aux.variable(AUX_VAR)
        one = aux.one()
        gens = [w * self._lift(f, aux) for f in self.generators]
        gens += [(one - w) * self._lift(g, aux) for g in other.generators]
        gb = buchberger(gens, MonomialOrder.block((0,)))
        kept = [self._drop(f, self.ring) for f in gb
                if all(m[0] == 0 for m in f.terms)]
        return Ideal(self.ring, kept)

    def colon(self, other):
        """(I : J) = cap over generators g of J of (1/g)(I cap <g>)."""
        if other.is_zero():
            raise GroebnerError("colon by the zero ideal")
        result = None
        for g in other.generators:
            meet = self.intersect(Ideal(self.ring, [g]))
            part = Ideal(self.ring, [exact_divide(f, g) for f in meet.generators])
            result = part if result is None else result.intersect(part)
        return result

    def saturate(self, other):
        current = self
        for _ in range(SATURATION_CAP):
            nxt = current.colon(other)
            if nxt.equals(current):
                return current
            current = nxt
        raise GroebnerError("saturation did not stabilize in %d steps" % SATURATION_CAP)

    def eliminate(self, var_names):
        """Generators of I cap k[remaining vars], via a block order."""
        idx = tuple(sorted(self.ring.vars.index(v) for v in var_names))
        gb = buchberger(list(self.generators), MonomialOrder.block(idx))
        kept = [f for f in gb if all(all(m[i] == 0 for i in idx) for m in f.terms)]
        return Ideal(self.ring, kept)

    def contract_to_base(self):
        """I cap F_{p^k}[s], as an ideal of the base ring."""
        ring = self.ring
        if not ring.has_base:
            raise RingError("contract_to_base needs a base variable")
        elim = self.eliminate(ring.x_vars)
        base = base_ring(ring)
        gens = [Polynomial(base, {(m[ring.s_index],): c for m, c in f.terms.items()})
                for f in elim.generators]
        return Ideal(base, gens)

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.generators)


def base_ring(ring):
    return RingSpec(ring.field, (), has_base=True, depth=ring.depth, e=ring.e)


def exact_divide(f, g, order=None):
    """Quotient f/g, raising if g does not divide f exactly."""
    order = order or MonomialOrder.grevlex()
    F = f.ring.field
    gm, gc = g.leading(order)
    gc_inv = F.inv(gc)
    quot = {}
    work = f
    while not work.is_zero():
        m, c = work.leading(order)
        if not mono_divides(gm, m):
            raise GroebnerError("inexact polynomial division")
        qm = mono_div(m, gm)
        qc = F.mul(c, gc_inv)
        quot[qm] = qc
        work = work - g.mul_monomial(qm, qc)
    return Polynomial(f.ring, quot)


def generically_equal(I, J):
    """Equality after inverting the base: (flag, witness in F_{p^k}[s]).

    True iff for every generator g of I the base contraction of (J : g)
    is nonzero, and symmetrically; the witness h is a product of one
    nonzero contracted element per generator, so equality holds on the
    locus where h does not vanish.
    """
    ring = I.ring
    if not ring.has_base:
        raise RingError("generically_equal needs a base variable")
    base = base_ring(ring)
    witness = base.one()
    if I.is_zero() and J.is_zero():
        return True, witness
    if I.is_zero() != J.is_zero():
        return False, None
    for src, dst in ((I, J), (J, I)):
        for g in src.generators:
            if dst.contains_poly(g):
                continue  # witness factor 1
            contracted = dst.colon(Ideal(ring, [g])).contract_to_base()
            gb = contracted.groebner()
            if not gb:
                return False, None
            witness = witness * gb[-1]
    return True, witness
