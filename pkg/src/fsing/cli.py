"""Command line front end: read a family spec, run a computation, report.

Spec files are JSON:

    {"p": 3, "variables": ["x"], "base": true, "depth": 4,
     "relations": [], "map": {"e": 1, "u": "x^9+t"},
     "seed": ["x^3+t"], "n_max": 4}

`"map": "canonical"` (or `"u": "canonical"`) needs exactly one relation
f and sets u = f^{p^e-1}.  Reports are deterministic: the same spec and
command always produce the same bytes on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .absolute import (is_f_pure, jacobian_ideal, omega_invariants_hypersurface,
                       sigma_absolute, tau_absolute, unit_ideal)
from .field import FieldError, FieldSpec
from .frobenius import CartierMap, PreconditionError, image_ideal
from .groebner import GroebnerError, Ideal
from .poly import ParseError, RingError, RingSpec
from .relative import (FamilySpec, FiberPoint, absolutize_and_compare,
                       detect_stabilization, hsl_uniform_bound, min_t_power,
                       relative_flags, relative_test_seed, restrict_fiber,
                       sigma_chain, tau_chain, verify_restriction_theorem)

DEFAULT_N_MAX = 4
DEFAULT_DEPTH = 4


class SpecError(ValueError):
    """Malformed spec file (CLI exit code 1)."""


def parse_spec(path, depth=None, n_max=None):
    """Load and validate a family spec; returns (FamilySpec, n_max)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    try:
        p = int(data["p"])
    except KeyError:
        raise SpecError("spec is missing the field characteristic 'p'")
    k = int(data.get("extension_degree", 1))
    mp = tuple(data.get("minimal_polynomial", ()))
    fld = FieldSpec(p, k, mp)
    variables = tuple(data.get("variables", ()))
    if not variables:
        raise SpecError("spec needs at least one variable")
    has_base = bool(data.get("base", True))
    depth = depth if depth is not None else int(data.get("depth", DEFAULT_DEPTH))
    ring = RingSpec(fld, variables, has_base=has_base,
                    depth=depth if has_base else 0)
    relations = [ring.parse(src) for src in data.get("relations", ())]
    ring.set_relations(relations)
    mp_map = data.get("map", {})
    if mp_map == "canonical":
        mp_map = {"e": 1, "u": "canonical"}
    e = int(mp_map.get("e", 1))
    u_src = mp_map.get("u", "canonical")
    if u_src == "canonical":
        if len(relations) != 1:
            raise SpecError("canonical multiplier needs exactly one relation")
        u = relations[0] ** (p ** e - 1)
    else:
        u = ring.parse(u_src)
    phi = CartierMap(ring, e, u, relative=has_base)
    phi.check_well_defined()
    seed_src = data.get("seed")
    seed = build_seed(ring, seed_src) if seed_src is not None else None
    n_max = n_max if n_max is not None else int(data.get("n_max", DEFAULT_N_MAX))
    return FamilySpec(ring, phi, seed), n_max


def build_seed(ring, src, power=1):
    if src == "jacobian":
        seed = (relative_test_seed(ring, power) if ring.has_base
                else jacobian_ideal(ring))
        return seed
    if isinstance(src, str):
        src = [part for part in src.split(";") if part.strip()]
    seed = Ideal(ring, [ring.parse(g) for g in src])
    if power > 1:
        base = seed
        for _ in range(power - 1):
            seed = seed.times(base)
    return seed


# -- serialization ------------------------------------------------------


def ideal_strings(I):
    if I is None:
        return None
    gens = I.reduced().generators
    if not gens:
        return ["0"]
    if len(gens) == 1 and gens[0].is_one():
        return ["1"]
    return sorted(str(g) for g in gens)


def frac_str(value):
    if value is None:
        return None
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def emit_report(report, fmt):
    if fmt == "json":
        return (json.dumps(report, indent=2) + "\n").encode()
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append("%s:" % key)
            cols = list(value[0])
            widths = [max(len(str(row.get(c, ""))) for row in value + [dict(zip(cols, cols))])
                      for c in cols]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for row in value:
                lines.append("  " + "  ".join(
                    str(row.get(c, "")).ljust(w) for c, w in zip(cols, widths)))
        elif isinstance(value, dict):
            lines.append("%s:" % key)
            for sub, sval in value.items():
                lines.append("  %s: %s" % (sub, sval))
        else:
            lines.append("%s: %s" % (key, value))
    return ("\n".join(lines) + "\n").encode()


def level_rows(levels):
    return [{"n": n, "generators": ideal_strings(I)} for n, I in levels]


# -- subcommands --------------------------------------------------------


def chain_for(spec, n_max, mode, args):
    if mode == "tau":
        seed = spec.seed
        if getattr(args, "seed", None):
            seed = build_seed(spec.ring, args.seed, args.power)
        if seed is None:
            seed = build_seed(spec.ring, "jacobian", args.power)
        return tau_chain(spec.phi, seed, n_max)
    return sigma_chain(spec.phi, n_max)


def cmd_sigma(spec, n_max, args):
    if spec.ring.has_base:
        return {"levels": level_rows(chain_for(spec, n_max, "sigma", args))}
    sigma, hsl, chain = sigma_absolute(spec.phi)
    return {"sigma": ideal_strings(sigma), "hsl": hsl,
            "chain": [ideal_strings(I) for I in chain]}


def cmd_tau(spec, n_max, args):
    if spec.ring.has_base:
        return {"levels": level_rows(chain_for(spec, n_max, "tau", args))}
    seed = spec.seed or build_seed(spec.ring, args.seed or "jacobian", args.power)
    return {"tau": ideal_strings(tau_absolute(spec.phi, seed))}


def cmd_hsl(spec, n_max, args):
    if not spec.ring.has_base:
        _, hsl, _ = sigma_absolute(spec.phi)
        return {"hsl": hsl}
    n, fibers = verify_restriction_theorem(spec, n_max)
    bound = hsl_uniform_bound(spec, n_max, n)
    return {"hsl_uniform_bound": bound,
            "restriction_level": n if n is not None else "none-within-cap"}


def cmd_fedder(spec, n_max, args):
    ring = spec.ring
    if not ring.relations:
        return {"f_pure": True}
    I = Ideal(ring, list(ring.relations))
    return {"f_pure": is_f_pure(I, spec.phi.e)}


def cmd_fiber(spec, n_max, args):
    if args.fiber_lambda is None:
        raise PreconditionError("fiber needs --lambda")
    if not spec.ring.has_base:
        raise PreconditionError("fiber needs a family over a base")
    point = FiberPoint(int(args.fiber_lambda))
    psi = restrict_fiber(spec.phi, point)
    sigma, hsl, _ = sigma_absolute(psi)
    out = {"lambda": point.label(spec.ring.field),
           "sigma": ideal_strings(sigma), "hsl": hsl}
    if spec.seed is not None:
        seed0 = restrict_fiber(spec.seed, point, target=psi.ring)
        out["tau"] = ideal_strings(tau_absolute(psi, seed0))
    return out


def cmd_scan(spec, n_max, args):
    mode = "tau" if (spec.seed is not None or getattr(args, "seed", None)) else "sigma"
    if mode == "tau" and spec.seed is None:
        spec.seed = build_seed(spec.ring, args.seed, args.power)
    n, fibers = verify_restriction_theorem(spec, n_max, mode=mode)
    rows = []
    for point, res in fibers.items():
        rows.append({"lambda": point.label(spec.ring.field),
                     "invariant": ideal_strings(res["invariant"]),
                     "hsl": res["hsl"],
                     "match_level": res["match_level"]})
    return {"mode": mode, "fibers": rows,
            "restriction_level": n if n is not None else "none-within-cap"}


def cmd_stabilize(spec, n_max, args):
    mode = "tau" if (spec.seed is not None or getattr(args, "seed", None)) else "sigma"
    levels = chain_for(spec, n_max, mode, args)
    n0, kind, witness = detect_stabilization(levels)
    return {"mode": mode, "levels": level_rows(levels),
            "stabilization_index": n0, "stabilization_kind": kind,
            "open_locus_witness": str(witness) if witness is not None else None}


def cmd_flags(spec, n_max, args):
    if spec.ring.has_base:
        return {"flags": relative_flags(spec, n_max)}
    out = {"f_pure": cmd_fedder(spec, n_max, args)["f_pure"]}
    if len(spec.ring.relations) <= 1:
        out.update(omega_invariants_hypersurface(spec.ring, spec.phi.e))
    return {"flags": out}


def cmd_compare_absolute(spec, n_max, args):
    n = args.n if args.n is not None else 1
    image_abs, a_n, equal = absolutize_and_compare(spec, n)
    return {"n": n, "absolute_image": ideal_strings(image_abs),
            "relative_image": ideal_strings(a_n), "equal": equal}


def cmd_min_t_power(spec, n_max, args):
    n = args.n if args.n is not None else 1
    a_n = image_ideal(spec.phi, unit_ideal(spec.ring), n)
    return {"n": n, "min_t_power": frac_str(min_t_power(a_n, ne=n * spec.phi.e))}


COMMANDS = {
    "sigma": cmd_sigma,
    "tau": cmd_tau,
    "hsl": cmd_hsl,
    "fedder": cmd_fedder,
    "fiber": cmd_fiber,
    "scan": cmd_scan,
    "stabilize": cmd_stabilize,
    "flags": cmd_flags,
    "compare-absolute": cmd_compare_absolute,
    "min-t-power": cmd_min_t_power,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fsing",
        description="Frobenius-theoretic singularity invariants of "
                    "hypersurfaces and one-parameter families.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--spec", required=True, help="path to a JSON family spec")
    parser.add_argument("--n-max", type=int, default=None)
    parser.add_argument("--depth", type=int, default=None)
    parser.add_argument("--n", type=int, default=None,
                        help="chain level for min-t-power / compare-absolute")
    parser.add_argument("--lambda", dest="fiber_lambda", default=None,
                        help="base value for the fiber command")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", default=None,
                        help="'jacobian' or semicolon-separated generators")
    parser.add_argument("--power", type=int, default=1)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    started = time.time()
    try:
        spec, n_max = parse_spec(args.spec, depth=args.depth, n_max=args.n_max)
        body = COMMANDS[args.command](spec, n_max, args)
    except (SpecError, OSError, json.JSONDecodeError, ParseError,
            FieldError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    except (PreconditionError, RingError, GroebnerError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    report = {"command": args.command, "version": __version__}
    report.update(body)
    sys.stdout.buffer.write(emit_report(report, args.format))
    print("elapsed: %.3fs" % (time.time() - started), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
