"""Reduced fractions of multivariate polynomials over the rationals.

Polynomials are sympy ``PolyElement`` values (sparse, graded-lex order,
gmpy2 rational coefficients).  ``RatFunc`` keeps ``gcd(num, den) == 1`` and
a denominator whose graded-lex leading coefficient is 1.
"""

from __future__ import annotations

from gmpy2 import mpq


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        ring = num.ring
        if den is None:
            self.num, self.den = num, ring.one
            return
        if den.ring is not ring:
            raise ValueError("numerator and denominator live in different rings")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ring.zero, ring.one
            return
        if not _reduced and not den.is_ground:
            _, num, den = num.cofactors(den)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        self.num, self.den = num, den

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, ring, c) -> "RatFunc":
        return cls(ring(mpq(c)))

    @classmethod
    def var(cls, ring, i: int) -> "RatFunc":
        return cls(ring.gens[i])

    @property
    def ring(self):
        return self.num.ring

    # predicates -----------------------------------------------------------
    def is_poly(self) -> bool:
        return self.den.is_ground

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def as_poly(self):
        """Return the polynomial; callers check ``is_poly`` first."""
        if not self.den.is_ground:
            raise ValueError("not a polynomial")
        return self.num if self.den == 1 else self.num.quo_ground(self.den.LC)

    def at_origin(self):
        """Value at the origin; ``None`` when the denominator vanishes there."""
        zero = self.ring.zero_monom
        d0 = self.den.get(zero, 0)
        if d0 == 0:
            return None
        return mpq(self.num.get(zero, 0)) / mpq(d0)

    def is_holomorphic_at_origin(self) -> bool:
        return self.den.get(self.ring.zero_monom, 0) != 0

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, mpq)) or type(other).__name__ == "Fraction":
            return RatFunc(self.ring(mpq(other)))
        if hasattr(other, "ring") and other.ring is self.ring:
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == 1:
                return RatFunc(self.num + other.num)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == 1 and other.den == 1:
            return RatFunc(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.ring.one) / (self ** (-k))
        return RatFunc(self.num**k, self.den**k, _reduced=True)

    def scale(self, c) -> "RatFunc":
        c = mpq(c)
        if c == 0:
            return RatFunc(self.ring.zero)
        return RatFunc(self.num.mul_ground(c), self.den, _reduced=True)

    def diff(self, i: int) -> "RatFunc":
        """Partial derivative in generator i (quotient rule, renormalized)."""
        x = self.ring.gens[i]
        if self.den == 1:
            return RatFunc(self.num.diff(x))
        return RatFunc(
            self.num.diff(x) * self.den - self.num * self.den.diff(x), self.den**2
        )

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == 1:
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"

    # ring changes ---------------------------------------------------------
    def remap(self, ring, positions) -> "RatFunc":
        """Move to ``ring``; generator i goes to position ``positions[i]``
        (``None`` means substitute zero)."""
        return RatFunc(remap_poly(self.num, ring, positions), remap_poly(self.den, ring, positions))

    def compose(self, ring, images) -> "RatFunc":
        """Substitute generator i by the polynomial ``images[i]`` of ``ring``."""
        return RatFunc(
            _compose_poly(self.num, ring, images), _compose_poly(self.den, ring, images)
        )


def remap_poly(p, ring, positions):
    n = ring.ngens
    out = {}
    for exp, c in p.items():
        new = [0] * n
        dead = False
        for i, e in enumerate(exp):
            if e == 0:
                continue
            j = positions[i]
            if j is None:
                dead = True
                break
            new[j] += e
        if dead:
            continue
        key = tuple(new)
        out[key] = out.get(key, 0) + c
    return ring.from_dict({k: v for k, v in out.items() if v != 0}) if out else ring.zero


def _compose_poly(p, ring, images):
    acc = ring.zero
    for exp, c in p.items():
        term = ring(c)
        for i, e in enumerate(exp):
            if e:
                term = term * images[i] ** e
        acc += term
    return acc
