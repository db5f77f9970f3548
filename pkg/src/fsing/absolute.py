"""Absolute F-singularity invariants over a perfect field.

sigma is the stable image of the descending chain of Cartier-map
images, tau the stable ascending sum of images of a test-element seed.
Chains are iterated one step at a time: the image of psi^n equals the
one-step image of the previous stage, so only the multiplier u itself
is ever expanded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .frobenius import (CartierMap, PreconditionError, bracket_power,
                        fedder_ideal, image_ideal)
from .groebner import Ideal

ITERATION_CAP = 64


@dataclass
class AbsoluteInvariantReport:
    sigma: Ideal
    hsl: int
    tau: Ideal = None
    flags: dict = field(default_factory=dict)
    chain_trace: list = field(default_factory=list)


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def sigma_absolute(psi, cap=ITERATION_CAP):
    """Stable image of the chain R >= im(psi) >= im(psi^2) >= ...

    Returns (sigma, hsl, chain_trace); hsl is the first index at which
    the chain repeats (0 if the first image is already all of R).
    """
    ring = psi.ring
    chain = [unit_ideal(ring)]
    prev = chain[0]
    for n in range(1, cap + 1):
        cur = image_ideal(psi, prev, 1)
        if cur.equals(prev):
            return prev.reduced(), n - 1, chain
        chain.append(cur)
        prev = cur
    raise PreconditionError("sigma chain did not stabilize within %d steps" % cap)


def tau_absolute(psi, seed, cap=ITERATION_CAP):
    """Stable sum seed + psi(seed) + psi^2(...) + ... (ascending chain)."""
    ring = psi.ring
    if seed.is_zero():
        raise PreconditionError("tau needs a nonzero seed")
    current = image_ideal(psi, seed, 0)  # seed reduced mod relations
    for _ in range(cap):
        nxt = current.plus(image_ideal(psi, current, 1)).reduced()
        if nxt.equals(current):
            return current
        current = nxt
    raise PreconditionError("tau chain did not stabilize within %d steps" % cap)


def is_f_pure(I, e=1, at=None):
    """Fedder's criterion at a maximal ideal (default the origin)."""
    ring = I.ring
    q = ring.field.p ** e
    if at is None:
        at = Ideal(ring, [ring.variable(v) for v in ring.x_vars])
    return not bracket_power(at, q).contains(fedder_ideal(I, e))


def _det(matrix):
    if len(matrix) == 1:
        return matrix[0][0]
    ring = matrix[0][0].ring
    total = ring.zero()
    for j in range(len(matrix)):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_ideal(ring, include_t=True):
    """Jacobian test-element seed of the ring's relations, reduced mod them.

    Principal relations use the partial derivatives; complete
    intersections use the maximal minors of the Jacobian matrix.
    """
    rels = ring.relations
    if not rels:
        return unit_ideal(ring)
    variables = list(ring.x_vars)
    if include_t and ring.has_base:
        variables.append("t")
    rows = [[f.derivative(v) for v in variables] for f in rels]
    r = len(rels)
    if r == 1:
        minors = rows[0]
    else:
        if r > len(variables):
            raise PreconditionError("relations do not form a complete intersection")
        minors = []
        for cols in combinations(range(len(variables)), r):
            minors.append(_det([[rows[i][j] for j in cols] for i in range(r)]))
    if Ideal(ring, list(rels)).contains(Ideal(ring, minors)):
        raise PreconditionError("Jacobian ideal vanishes mod relations: "
                                "non-reduced geometry")
    return Ideal(ring, minors).plus(Ideal(ring, list(rels)))


def test_element_hypersurface(ring):
    return jacobian_ideal(ring, include_t=True)


def omega_invariants_hypersurface(ring, e=1):
    """F-injectivity / F-rationality via the trace-map multiplier f^{p^e-1}.

    Only for hypersurfaces (principal relations), where the canonical
    module is free and the trace map is the Cartier map with multiplier
    f^{p^e-1}.
    """
    rels = ring.relations
    if len(rels) > 1:
        raise PreconditionError("omega invariants need principal relations")
    q = ring.field.p ** e
    u = rels[0] ** (q - 1) if rels else ring.one()
    psi = CartierMap(ring, e, u, relative=False)
    sigma, hsl, _ = sigma_absolute(psi)
    f_injective = sigma.is_unit()
    tau = tau_absolute(psi, jacobian_ideal(ring))
    f_rational = tau.is_unit()
    return {"f_injective": f_injective, "f_rational": f_rational}
