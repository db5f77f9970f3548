"""Exact arithmetic in GF(p^k).

Elements are encoded as integers in [0, p^k): the element
sum(c_i * g^i) is stored as sum(c_i * p^i), where g is the root of the
minimal polynomial.  For k == 1 this is plain arithmetic mod p.  All
operations are pure; a FieldSpec is immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_divmod_mod_p(num, den, p):
    """Divide coefficient lists (low degree first) over F_p."""
    num = list(num)
    dlead = den[-1]
    inv_lead = pow(dlead, p - 2, p)
    quot = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] * inv_lead % p
        quot[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] = (num[i + j] - c * dc) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _monic_polys(p, deg):
    """All monic coefficient lists of exact degree deg over F_p."""
    def rec(i):
        if i == deg:
            yield [1]
            return
        for tail in rec(i + 1):
            for c in range(p):
                yield [c] + tail
    return rec(0)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) with generator g satisfying the given minimal polynomial.

    minimal_polynomial lists coefficients low degree first, length k+1,
    monic.  For k == 1 it defaults to (0, 1), i.e. g = 0.
    """

    p: int
    k: int = 1
    minimal_polynomial: tuple = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError("p = %d is not prime" % self.p)
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        if self.p ** self.k >= 2 ** 63:
            raise FieldError("p^k does not fit in 64 bits")
        if self.k == 1:
            if not self.minimal_polynomial:
                object.__setattr__(self, "minimal_polynomial", (0, 1))
            return
        mp = tuple(c % self.p for c in self.minimal_polynomial)
        if len(mp) != self.k + 1 or mp[-1] != 1:
            raise FieldError("minimal polynomial must be monic of degree k")
        object.__setattr__(self, "minimal_polynomial", mp)
        self._check_irreducible(mp)

    def _check_irreducible(self, mp):
        # trial division by every monic polynomial of degree <= k/2
        for d in range(1, self.k // 2 + 1):
            for den in _monic_polys(self.p, d):
                _, rem = _poly_divmod_mod_p(mp, den, self.p)
                if rem == [0]:
                    raise FieldError("minimal polynomial is reducible")

    @property
    def order(self):
        return self.p ** self.k

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def generator(self):
        if self.k == 1:
            raise FieldError("prime field has no extension generator")
        return self.p

    def decode(self, a):
        """Integer encoding -> coefficient tuple (length k)."""
        coeffs = []
        for _ in range(self.k):
            coeffs.append(a % self.p)
            a //= self.p
        return tuple(coeffs)

    def encode(self, coeffs):
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + (c % self.p)
        return a

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x + y for x, y in zip(ca, cb)])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self.encode([-c for c in self.decode(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        ca, cb = self.decode(a), self.decode(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        _, rem = _poly_divmod_mod_p(prod, self.minimal_polynomial, self.p)
        rem += [0] * (self.k - len(rem))
        return self.encode(rem)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d^%d)" % (self.p, self.k))
        return self.pow(a, self.order - 2)

    def frobenius(self, a, e=1):
        """a -> a^(p^e)."""
        if self.k == 1:
            return a  # Fermat: identity on F_p
        for _ in range(e % self.k):
            a = self.pow(a, self.p)
        return a

    def frobenius_inverse(self, a, e=1):
        """The unique b with b^(p^e) = a.

        Frobenius is a bijection with inverse x -> x^(p^(k-1)); apply it
        e times.
        """
        if self.k == 1 or a in (0, 1):
            return a
        for _ in range(e % self.k):
            a = self.pow(a, self.p ** (self.k - 1))
        return a

    def elements(self):
        return range(self.order)

    def repr_element(self, a):
        """Canonical string: integer for prime field, polynomial in g else."""
        if self.k == 1:
            return str(a)
        coeffs = self.decode(a)
        parts = []
        for i in range(self.k - 1, -1, -1):
            c = coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("g" if c == 1 else "%d*g" % c)
            else:
                parts.append("g^%d" % i if c == 1 else "%d*g^%d" % (c, i))
        return "+".join(parts) if parts else "0"
