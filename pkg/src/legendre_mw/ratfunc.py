"""Polynomials F_q[u] and reduced rational functions F_q(u).

A Poly stores its coefficients as an (L, k) int64 matrix of F_p digit
vectors, low u-degree first; the zero polynomial is the empty matrix and
carries the degree sentinel -inf.  Products run through exact numpy
integer convolution layer by layer in the extension basis, which keeps
the doubling-limit height computations fast.  Everything stays integer
arithmetic end to end; when a product could overflow int64 the code
falls back to object-dtype (unbounded Python ints).

A RatFunc is always canonical: gcd(num, den) = 1 and den monic.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx, FieldElement

NEG_INF = float("-inf")


def _as_matrix(ctx: FieldCtx, rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.ndim != 2 or (arr.shape[0] > 0 and arr.shape[1] != ctx.k):
        raise ValueError("coefficient matrix must have shape (L, k)")
    return arr


def _trim_rows(arr: np.ndarray) -> np.ndarray:
    L = arr.shape[0]
    while L > 0 and not arr[L - 1].any():
        L -= 1
    return arr[:L]


class Poly:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, rows, _trusted: bool = False):
        if _trusted:
            arr = rows
        else:
            arr = _trim_rows(_as_matrix(ctx, rows) % ctx.p)
        arr.setflags(write=False)
        self.ctx = ctx
        self.c = arr

    # -- constructors -------------------------------------------------

    @classmethod
    def from_elems(cls, ctx: FieldCtx, elems) -> "Poly":
        """Build from a list of FieldElements / ints, low degree first."""
        rows = [ctx.elem(e).c for e in elems]
        if not rows:
            return cls.zero(ctx)
        return cls(ctx, np.array(rows, dtype=np.int64))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, np.zeros((0, ctx.k), dtype=np.int64), _trusted=True)

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls.constant(ctx, 1)

    @classmethod
    def constant(cls, ctx: FieldCtx, value) -> "Poly":
        return cls.from_elems(ctx, [value])

    @classmethod
    def variable(cls, ctx: FieldCtx) -> "Poly":
        return cls.monomial(ctx, 1)

    @classmethod
    def monomial(cls, ctx: FieldCtx, n: int, coeff=1) -> "Poly":
        e = ctx.elem(coeff)
        if e.is_zero():
            return cls.zero(ctx)
        rows = np.zeros((n + 1, ctx.k), dtype=np.int64)
        rows[n, :] = e.c
        return cls(ctx, rows, _trusted=True)

    # -- inspection ---------------------------------------------------

    @property
    def deg(self):
        """Degree, with -inf for the zero polynomial."""
        return self.c.shape[0] - 1 if self.c.shape[0] else NEG_INF

    def is_zero(self) -> bool:
        return self.c.shape[0] == 0

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < self.c.shape[0]:
            return FieldElement(self.ctx, tuple(int(v) for v in self.c[i]))
        return self.ctx.zero()

    def lc(self) -> FieldElement:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeff(self.c.shape[0] - 1)

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc() == self.ctx.one()

    # -- ring operations ----------------------------------------------

    def _check(self, other: "Poly"):
        if self.ctx != other.ctx:
            raise ValueError("coefficient field mismatch")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly.constant(self.ctx, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        la, lb = self.c.shape[0], other.c.shape[0]
        n = max(la, lb)
        out = np.zeros((n, self.ctx.k), dtype=np.int64)
        out[:la] += self.c
        out[:lb] += other.c
        return Poly(self.ctx, _trim_rows(out % self.ctx.p), _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly.constant(self.ctx, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(self.ctx, (-self.c) % self.ctx.p, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(self.ctx.elem(other))
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ctx)
        return Poly(self.ctx, _mul_arrays(self.ctx, self.c, other.c), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, a: FieldElement) -> "Poly":
        """Multiply every coefficient by the field element a."""
        if a.is_zero() or self.is_zero():
            return Poly.zero(self.ctx)
        m = self.ctx.mul_matrix(a)
        return Poly(self.ctx, (self.c @ m) % self.ctx.p, _trusted=True)

    def __divmod__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return _divmod_arrays(self, other, want_quotient=True)

    def __floordiv__(self, other):
        q, r = divmod(self, other)
        return q

    def __mod__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return _divmod_arrays(self, other, want_quotient=False)

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm (gcd(0,0) = 0)."""
        a._check(b)
        while not b.is_zero():
            a, b = b, a % b
        return a if a.is_zero() else a.monic()

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.lc()
        return self if lc == self.ctx.one() else self.scale(lc.inv())

    # -- maps ----------------------------------------------------------

    def eval(self, a: FieldElement) -> FieldElement:
        """Horner evaluation at a field element."""
        acc = self.ctx.zero()
        for i in range(self.c.shape[0] - 1, -1, -1):
            acc = acc * a + self.coeff(i)
        return acc

    def scale_var(self, a: FieldElement) -> "Poly":
        """The substitution u -> a*u (coefficient i picks up a^i)."""
        if self.is_zero():
            return self
        rows = np.array(self.c)
        power = self.ctx.one()
        for i in range(1, rows.shape[0]):
            power = power * a
            rows[i] = (rows[i] @ self.ctx.mul_matrix(power)) % self.ctx.p
        return Poly(self.ctx, _trim_rows(rows), _trusted=True)

    def frobenius(self) -> "Poly":
        """Apply a -> a^p to every coefficient (fixes u)."""
        if self.is_zero() or self.ctx.k == 1:
            return self
        return Poly(self.ctx, (self.c @ self.ctx.frobenius_matrix) % self.ctx.p,
                    _trusted=True)

    # -- misc -----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ctx == other.ctx
                and np.array_equal(self.c, other.c))

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.c.shape[0] - 1, -1, -1):
            a = self.coeff(i)
            if a.is_zero():
                continue
            if self.ctx.k == 1:
                astr = str(a.c[0])
                one = a.c[0] == 1
            else:
                astr = repr(a)
                one = a == self.ctx.one()
            if i == 0:
                terms.append(astr)
            else:
                ustr = "u" if i == 1 else "u^%d" % i
                terms.append(ustr if one else "%s*%s" % (astr, ustr))
        return " + ".join(terms)

    def to_obj(self):
        return [[int(v) for v in row] for row in self.c]

    @classmethod
    def from_obj(cls, ctx: FieldCtx, obj) -> "Poly":
        if not obj:
            return cls.zero(ctx)
        return cls(ctx, np.array(obj, dtype=np.int64))


# ----------------------------------------------------------------------
# Array kernels.

def _mul_arrays(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of coefficient matrices: per-layer integer
    convolution in u, then reduction of w-degrees >= k, then mod p."""
    k, p = ctx.k, ctx.p
    la, lb = a.shape[0], b.shape[0]
    # worst-case accumulated magnitude before the final mod
    bound = min(la, lb) * (p - 1) ** 2 * (1 + (k - 1) * (p - 1))
    if bound >= 2 ** 62:
        a = a.astype(object)
        b = b.astype(object)
        acc = np.zeros((la + lb - 1, 2 * k - 1), dtype=object)
    else:
        acc = np.zeros((la + lb - 1, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        ai = a[:, i]
        if not ai.any():
            continue
        for j in range(k):
            bj = b[:, j]
            if bj.any():
                acc[:, i + j] += np.convolve(ai, bj)
    if k > 1:
        red = ctx.reduction_rows
        for m in range(2 * k - 2, k - 1, -1):
            col = acc[:, m]
            if col.any():
                acc[:, :k] += col[:, None] * red[m - k][None, :]
    out = (acc[:, :k] % p).astype(np.int64)
    return _trim_rows(out)


def _divmod_arrays(a: Poly, b: Poly, want_quotient: bool):
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ctx = a.ctx
    db = b.c.shape[0] - 1
    la = a.c.shape[0]
    if la - 1 < db:
        return (Poly.zero(ctx), a) if want_quotient else a
    r = np.array(a.c)
    brows = b.c
    inv_lead = b.lc().inv()
    q = np.zeros((la - db, ctx.k), dtype=np.int64) if want_quotient else None
    for i in range(la - 1, db - 1, -1):
        if not r[i].any():
            continue
        coef = FieldElement(ctx, tuple(int(v) for v in r[i])) * inv_lead
        if want_quotient:
            q[i - db] = coef.c
        m = ctx.mul_matrix(coef)
        r[i - db:i + 1] = (r[i - db:i + 1] - brows @ m) % ctx.p
    rem = Poly(ctx, _trim_rows(r).copy(), _trusted=True)
    if want_quotient:
        return Poly(ctx, _trim_rows(q).copy(), _trusted=True), rem
    return rem


def poly_sqrt(f: Poly) -> Poly:
    """Exact square root of a perfect-square polynomial, without
    factoring: solve g from the top coefficient down, then verify.
    Raises ValueError if f is not a square."""
    if f.is_zero():
        return f
    if f.deg % 2 != 0:
        raise ValueError("odd degree: not a perfect square")
    ctx = f.ctx
    m = f.deg // 2
    top = f.lc().sqrt()
    if top is None:
        raise ValueError("leading coefficient is not a square")
    g = [ctx.zero()] * (m + 1)
    g[m] = top
    inv2gm = (ctx.elem(2) * top).inv()
    for i in range(m - 1, -1, -1):
        # x^(m+i) coefficient of g^2 is 2*g_m*g_i + sum over the already
        # known ordered pairs (j, m+i-j) with i < j < m
        s = f.coeff(m + i)
        for j in range(i + 1, m):
            s = s - g[j] * g[m + i - j]
        g[i] = s * inv2gm
    root = Poly.from_elems(ctx, g)
    if not (root * root) == f:
        raise ValueError("not a perfect square")
    return root


# ----------------------------------------------------------------------

class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _canonical: bool = False):
        if den is None:
            den = Poly.one(num.ctx)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            if num.is_zero():
                den = Poly.one(num.ctx)
            else:
                g = Poly.gcd(num, den)
                if g.deg > 0:
                    num = num // g
                    den = den // g
                lc = den.lc()
                if not lc == num.ctx.one():
                    inv = lc.inv()
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.ctx), _canonical=True)

    @classmethod
    def constant(cls, ctx: FieldCtx, value) -> "RatFunc":
        return cls.from_poly(Poly.constant(ctx, value))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "RatFunc":
        return cls.from_poly(Poly.zero(ctx))

    @classmethod
    def one(cls, ctx: FieldCtx) -> "RatFunc":
        return cls.from_poly(Poly.one(ctx))

    @classmethod
    def variable(cls, ctx: FieldCtx) -> "RatFunc":
        return cls.from_poly(Poly.variable(ctx))

    # -- inspection ---------------------------------------------------

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.deg == 0

    def deg(self) -> int:
        """Height-style degree max(deg num, deg den); errors on zero."""
        if self.is_zero():
            raise ValueError("deg of the zero rational function is undefined")
        return int(max(self.num.deg, self.den.deg))

    # -- field operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, (int, FieldElement)):
            return RatFunc.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    # -- maps ------------------------------------------------------------

    def eval(self, a: FieldElement) -> FieldElement:
        d = self.den.eval(a)
        if d.is_zero():
            raise ZeroDivisionError("pole at the evaluation point")
        return self.num.eval(a) / d

    def scale_var(self, a: FieldElement) -> "RatFunc":
        return RatFunc(self.num.scale_var(a), self.den.scale_var(a))

    def frobenius(self) -> "RatFunc":
        return RatFunc(self.num.frobenius(), self.den.frobenius())

    # -- misc --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement, Poly)):
            other = self._coerce(other)
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    __hash__ = None

    def __repr__(self):
        if self.den.deg == 0:
            return repr(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def to_obj(self):
        return {"num": self.num.to_obj(), "den": self.den.to_obj()}

    @classmethod
    def from_obj(cls, ctx: FieldCtx, obj) -> "RatFunc":
        return cls(Poly.from_obj(ctx, obj["num"]), Poly.from_obj(ctx, obj["den"]))


def frobenius_ratfunc(r: RatFunc) -> RatFunc:
    """Coefficient-wise p-power Frobenius; fixes u.  A rational function
    is defined over F_p(u) iff this fixes it."""
    return r.frobenius()
