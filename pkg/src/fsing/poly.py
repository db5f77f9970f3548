"""Sparse multivariate polynomials over GF(p^k).

The working ring is F_{p^k}[x_1..x_m, s] where the optional last
variable s is the p^N-th root of the base parameter t (N = ring depth).
Every object is a genuine polynomial; fractional t-powers only appear in
I/O, printed as t^(a/b) in lowest terms.

Monomials are plain exponent tuples; coefficients are FieldSpec-encoded
integers.  Polynomials are immutable in practice: no operation mutates
its arguments.
"""

from __future__ import annotations

from fractions import Fraction

from .field import FieldSpec


class RingError(ValueError):
    pass


class ParseError(ValueError):
    pass


class RingSpec:
    """F_{p^k}[x_vars, s] with s = t^(1/p^depth), plus quotient relations.

    relations (possibly empty) generate the defining ideal of R = S/I;
    they are attached after construction because they are themselves
    polynomials over this ring.  e is the step of the structural map.
    """

    __slots__ = ("field", "x_vars", "has_base", "depth", "e", "relations",
                 "_rel_ideal")

    def __init__(self, field: FieldSpec, x_vars, has_base=False, depth=0, e=1):
        self.field = field
        self.x_vars = tuple(x_vars)
        self.has_base = bool(has_base)
        self.depth = int(depth)
        self.e = int(e)
        self.relations = ()
        self._rel_ideal = None
        if len(set(self.x_vars)) != len(self.x_vars):
            raise RingError("duplicate variable names")
        for name in self.x_vars:
            if name in ("t", "s", "g"):
                raise RingError("variable name %r is reserved" % name)
        if self.has_base and self.depth < 0:
            raise RingError("depth must be >= 0")

    @property
    def vars(self):
        return self.x_vars + (("s",) if self.has_base else ())

    @property
    def nvars(self):
        return len(self.x_vars) + (1 if self.has_base else 0)

    @property
    def s_index(self):
        if not self.has_base:
            raise RingError("ring has no base variable")
        return len(self.x_vars)

    @property
    def t_unit(self):
        """s-exponent of t, i.e. p^depth."""
        return self.field.p ** self.depth

    def set_relations(self, polys):
        for f in polys:
            if f.ring is not self:
                raise RingError("relation from a different ring")
            if self.has_base:
                unit = self.t_unit
                for mono in f.terms:
                    if mono[self.s_index] % unit:
                        raise RingError(
                            "relation has fractional t-power %d/%d"
                            % (mono[self.s_index], unit))
        self.relations = tuple(polys)
        self._rel_ideal = None

    def compatible(self, other):
        return (self.field == other.field and self.x_vars == other.x_vars
                and self.has_base == other.has_base and self.depth == other.depth)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def from_int(self, n):
        return self.constant(self.field.from_int(n))

    def variable(self, name, exp=1):
        if name == "t":
            return self.variable("s", exp * self.t_unit)
        idx = self.vars.index(name)
        mono = [0] * self.nvars
        mono[idx] = exp
        return Polynomial(self, {tuple(mono): self.field.one})

    def monomial(self, exponents, coeff=None):
        coeff = self.field.one if coeff is None else coeff
        if coeff == 0:
            return self.zero()
        return Polynomial(self, {tuple(exponents): coeff})

    def parse(self, text):
        return _parse(self, text)

    def __repr__(self):
        base = ", s=t^(1/%d)" % self.t_unit if self.has_base else ""
        return "RingSpec(GF(%d^%d)[%s%s])" % (
            self.field.p, self.field.k, ", ".join(self.x_vars), base)


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


class MonomialOrder:
    """Total monomial order: grevlex, lex, or a block elimination order.

    key(mono) returns a tuple; larger key = larger monomial.  Block
    orders rank the elimination variables strictly above the rest,
    comparing each block by grevlex.
    """

    __slots__ = ("kind", "elim")

    def __init__(self, kind, elim=()):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError("unknown order %r" % kind)
        self.kind = kind
        self.elim = tuple(sorted(elim))

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def block(cls, elim_indices):
        return cls("block", elim_indices)

    def key(self, mono):
        if self.kind == "grevlex":
            return grevlex_key(mono)
        if self.kind == "lex":
            return tuple(mono)
        elim = set(self.elim)
        head = tuple(mono[i] for i in self.elim)
        tail = tuple(e for i, e in enumerate(mono) if i not in elim)
        return (grevlex_key(head), grevlex_key(tail))

    def signature(self):
        return (self.kind, self.elim)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))

def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def is_one(self):
        return self.terms == {(0,) * self.ring.nvars: self.ring.field.one}

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def _check(self, other):
        if self.ring is not other.ring and not self.ring.compatible(other.ring):
            raise RingError("polynomials from incompatible rings")

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, 0), c)
        return Polynomial(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.ring.field
        out = {}
        small, big = (self.terms, other.terms)
        if len(small) > len(big):
            small, big = big, small
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = mono_mul(m1, m2)
                prev = out.get(m)
                val = F.mul(c1, c2)
                out[m] = F.add(prev, val) if prev is not None else val
        return Polynomial(self.ring, out)

    def scale(self, c):
        F = self.ring.field
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(cc, c) for m, cc in self.terms.items()})

    def mul_monomial(self, mono, coeff=None):
        F = self.ring.field
        coeff = F.one if coeff is None else coeff
        return Polynomial(self.ring, {
            mono_mul(m, mono): F.mul(c, coeff) for m, c in self.terms.items()})

    def frobenius_power(self, j):
        """f^(p^j) via the char-p fast path: scale exponents, power coefficients."""
        if j == 0:
            return self
        F = self.ring.field
        q = F.p ** j
        return Polynomial(self.ring, {
            tuple(e * q for e in m): F.pow(c, q) for m, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        if n == 0:
            return self.ring.one()
        p = self.ring.field.p
        j = 0
        while n % p == 0:
            n //= p
            j += 1
        base = self.frobenius_power(j)
        result = None
        acc = base
        while n:
            if n & 1:
                result = acc if result is None else result * acc
            n >>= 1
            if n:
                acc = acc * acc
        return result

    def substitute(self, assignments, target=None):
        """Substitute variables by polynomials (or field constants).

        assignments maps variable names (including 't') to replacement
        values in the target ring; unassigned variables must exist there.
        """
        ring = self.ring
        target = target or ring
        F = ring.field
        subs = {}
        for name, val in assignments.items():
            if name == "t":
                name = "s"
                # t = s^(p^N); substituting t=v means s |-> p^N-th root of v,
                # which callers supply directly via 's' when needed.  Here we
                # accept t only with constant values and take the root.
                if isinstance(val, Polynomial):
                    if not val.is_constant():
                        raise RingError("substituting t requires a constant")
                    val = val.constant_value()
                val = F.frobenius_inverse(val, ring.depth)
            idx = ring.vars.index(name)
            if not isinstance(val, Polynomial):
                val = target.constant(val)
            subs[idx] = val
        keep = {}
        for i, name in enumerate(ring.vars):
            if i not in subs:
                try:
                    keep[i] = target.vars.index(name)
                except ValueError:
                    raise RingError("variable %r missing from target ring" % name)
        out = target.zero()
        const_cache = {}
        for m, c in self.terms.items():
            factor = None
            kept = [0] * target.nvars
            ok = True
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in subs:
                    v = subs[i]
                    if v.is_constant():
                        cv = F.pow(v.constant_value(), e)
                        if cv == 0:
                            ok = False
                            break
                        c = F.mul(c, cv)
                    else:
                        key = (i, e)
                        if key not in const_cache:
                            const_cache[key] = v ** e
                        factor = const_cache[key] if factor is None \
                            else factor * const_cache[key]
                else:
                    kept[keep[i]] += e
            if not ok:
                continue
            term = target.monomial(kept, c)
            out = out + (term if factor is None else term * factor)
        return out

    def derivative(self, var):
        """Formal partial derivative in an x-variable or in t.

        Differentiation directly in s is rejected; for t the chain
        d/dt t^l = l t^(l-1) acts on integral t-powers only.
        """
        ring = self.ring
        F = ring.field
        if var == "s":
            raise RingError("cannot differentiate in the root variable s")
        if var == "t":
            si = ring.s_index
            unit = ring.t_unit
            out = {}
            for m, c in self.terms.items():
                se = m[si]
                if se % unit:
                    raise RingError("derivative in t of a fractional t-power")
                l = se // unit
                cc = F.mul(c, F.from_int(l))
                if l == 0 or cc == 0:
                    continue
                mm = list(m)
                mm[si] = (l - 1) * unit
                key = tuple(mm)
                out[key] = F.add(out.get(key, 0), cc)
            return Polynomial(ring, out)
        idx = ring.x_vars.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[idx]
            cc = F.mul(c, F.from_int(e))
            if e == 0 or cc == 0:
                continue
            mm = list(m)
            mm[idx] = e - 1
            key = tuple(mm)
            out[key] = F.add(out.get(key, 0), cc)
        return Polynomial(ring, out)

    def sorted_terms(self, order=None):
        order = order or MonomialOrder.grevlex()
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading(self, order):
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def __str__(self):
        return render(self)

    def __repr__(self):
        return "Polynomial(%s)" % render(self)


# ---------------------------------------------------------------------------
# text grammar


def render(f: Polynomial) -> str:
    """Canonical text form; parse(render(f)) == f."""
    ring = f.ring
    F = ring.field
    if f.is_zero():
        return "0"
    parts = []
    for mono, coeff in f.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 0:
                continue
            if ring.has_base and i == ring.s_index:
                frac = Fraction(e, ring.t_unit)
                if frac.denominator == 1:
                    factors.append("t" if frac == 1 else "t^%d" % frac.numerator)
                else:
                    factors.append("t^(%d/%d)" % (frac.numerator, frac.denominator))
            else:
                name = ring.vars[i]
                factors.append(name if e == 1 else "%s^%d" % (name, e))
        cstr = F.repr_element(coeff)
        if not factors:
            parts.append("(%s)" % cstr if ("+" in cstr or "*" in cstr) else cstr)
        elif coeff == F.one:
            parts.append("*".join(factors))
        else:
            if "+" in cstr or "*" in cstr:
                cstr = "(%s)" % cstr
            parts.append(cstr + "*" + "*".join(factors))
    return "+".join(parts)


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.toks = []
        self._lex()
        self.i = 0

    def _lex(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j]), i))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j], i))
                i = j
            elif ch in "+-*^()/":
                self.toks.append((ch, ch, i))
                i += 1
            else:
                raise ParseError("unexpected character %r at position %d" % (ch, i))

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %s at position %d, got %r" % (kind, tok[2], tok[1]))
        return tok


def _parse(ring, text):
    toks = _Tokens(text)
    f = _parse_expr(ring, toks)
    tok = toks.peek()
    if tok[0] != "end":
        raise ParseError("trailing input at position %d" % tok[2])
    return f


def _parse_expr(ring, toks):
    sign = 1
    if toks.peek()[0] in ("+", "-"):
        if toks.next()[0] == "-":
            sign = -1
    f = _parse_term(ring, toks)
    if sign < 0:
        f = -f
    while toks.peek()[0] in ("+", "-"):
        op = toks.next()[0]
        g = _parse_term(ring, toks)
        f = f + g if op == "+" else f - g
    return f


def _parse_term(ring, toks):
    f = _parse_factor(ring, toks)
    while toks.peek()[0] == "*":
        toks.next()
        f = f * _parse_factor(ring, toks)
    return f


def _parse_factor(ring, toks):
    base = _parse_atom(ring, toks)
    if toks.peek()[0] == "^":
        toks.next()
        exp = _parse_exponent(ring, toks)
        if isinstance(exp, Fraction):
            # only a bare t (or s) admits a fractional power
            if len(base.terms) != 1:
                raise ParseError("fractional power of a non-monomial")
            (mono, coeff), = base.terms.items()
            scaled = []
            for e in mono:
                v = Fraction(e) * exp
                if v.denominator != 1 or v < 0:
                    raise ParseError(
                        "power t^(%s) does not live at depth %d"
                        % (exp, ring.depth))
                scaled.append(int(v))
            if coeff != ring.field.one:
                coeff = ring.field.pow(coeff, exp.numerator)  # pragma: no cover
            return ring.monomial(scaled, coeff)
        return base ** exp
    return base


def _parse_exponent(ring, toks):
    tok = toks.peek()
    if tok[0] == "int":
        toks.next()
        return tok[1]
    if tok[0] == "(":
        toks.next()
        num = toks.expect("int")[1]
        if toks.peek()[0] == "/":
            toks.next()
            den = toks.expect("int")[1]
            toks.expect(")")
            return Fraction(num, den)
        toks.expect(")")
        return num
    raise ParseError("expected exponent at position %d" % tok[2])


def _parse_atom(ring, toks):
    tok = toks.next()
    if tok[0] == "int":
        return ring.from_int(tok[1])
    if tok[0] == "name":
        name = tok[1]
        if name == "g":
            if ring.field.k == 1:
                raise ParseError("generator g needs an extension field")
            return ring.constant(ring.field.generator)
        if name == "t" or name == "s":
            if not ring.has_base:
                raise ParseError("ring has no base variable")
            return ring.variable(name)
        if name in ring.x_vars:
            return ring.variable(name)
        raise ParseError("unknown variable %r at position %d" % (name, tok[2]))
    if tok[0] == "(":
        f = _parse_expr(ring, toks)
        toks.expect(")")
        return f
    raise ParseError("unexpected token %r at position %d" % (tok[1], tok[2]))
