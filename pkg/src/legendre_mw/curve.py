"""Elliptic curves in long Weierstrass form over F_q(u), with the exact
chord-tangent group law, 2-isogenies with explicit rational maps, and
invertible coordinate changes.

All coordinates are RatFunc values, so every computation is exact.
"""

from __future__ import annotations

from .gf import FieldCtx
from .ratfunc import Poly, RatFunc


class CurvePoint:
    """Affine point (x, y) or the point at infinity (x = y = None)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: "WeierstrassCurve", x: RatFunc | None, y: RatFunc | None):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.curve != other.curve:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    __hash__ = None

    def __neg__(self):
        return self.curve.neg(self)

    def __add__(self, other):
        return self.curve.add(self, other)

    def __sub__(self, other):
        return self.curve.add(self, self.curve.neg(other))

    def __rmul__(self, n: int):
        return self.curve.smul(n, self)

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return "(%s, %s)" % (self.x, self.y)

    def to_obj(self):
        if self.is_infinity:
            return "infinity"
        return {"x": self.x.to_obj(), "y": self.y.to_obj()}

    @classmethod
    def from_obj(cls, curve: "WeierstrassCurve", obj) -> "CurvePoint":
        if obj == "infinity":
            return curve.infinity()
        ctx = curve.ctx
        return curve.point(RatFunc.from_obj(ctx, obj["x"]), RatFunc.from_obj(ctx, obj["y"]))


class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with RatFunc a_i."""

    __slots__ = ("ctx", "a1", "a2", "a3", "a4", "a6", "_disc")

    def __init__(self, a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc, a6: RatFunc):
        ctx = a1.ctx
        for a in (a2, a3, a4, a6):
            if a.ctx != ctx:
                raise ValueError("coefficient field mismatch")
        self.ctx = ctx
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        self._disc = None
        disc = self.discriminant()
        if disc.is_zero():
            raise ValueError("singular curve: discriminant is zero")
        # c4^3 - c6^2 = 1728 * disc must hold identically
        c4, c6 = self.c4(), self.c6()
        if not (c4 ** 3 - c6 ** 2) == disc * 1728:
            raise AssertionError("c-invariant identity failed")

    @classmethod
    def from_coeffs(cls, ctx: FieldCtx, a1, a2, a3, a4, a6) -> "WeierstrassCurve":
        def co(v):
            if isinstance(v, RatFunc):
                return v
            if isinstance(v, Poly):
                return RatFunc.from_poly(v)
            return RatFunc.constant(ctx, v)
        return cls(co(a1), co(a2), co(a3), co(a4), co(a6))

    # -- invariants ----------------------------------------------------

    def b2(self) -> RatFunc:
        return self.a1 * self.a1 + 4 * self.a2

    def b4(self) -> RatFunc:
        return 2 * self.a4 + self.a1 * self.a3

    def b6(self) -> RatFunc:
        return self.a3 * self.a3 + 4 * self.a6

    def b8(self) -> RatFunc:
        return (self.a1 * self.a1 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 * self.a3
                - self.a4 * self.a4)

    def c4(self) -> RatFunc:
        return self.b2() * self.b2() - 24 * self.b4()

    def c6(self) -> RatFunc:
        b2 = self.b2()
        return -(b2 ** 3) + 36 * b2 * self.b4() - 216 * self.b6()

    def discriminant(self) -> RatFunc:
        if self._disc is None:
            b2, b4, b6, b8 = self.b2(), self.b4(), self.b6(), self.b8()
            self._disc = (-(b2 * b2 * b8) - 8 * (b4 ** 3) - 27 * (b6 * b6)
                          + 9 * b2 * b4 * b6)
        return self._disc

    def j_invariant(self) -> RatFunc:
        return (self.c4() ** 3) / self.discriminant()

    # -- points ----------------------------------------------------------

    def infinity(self) -> CurvePoint:
        return CurvePoint(self, None, None)

    def contains(self, x: RatFunc, y: RatFunc) -> bool:
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x ** 3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def point(self, x: RatFunc, y: RatFunc) -> CurvePoint:
        if not self.contains(x, y):
            raise ValueError("point is not on the curve")
        return CurvePoint(self, x, y)

    def on_curve(self, P: CurvePoint) -> bool:
        if P.curve != self:
            return False
        return P.is_infinity or self.contains(P.x, P.y)

    # -- group law ---------------------------------------------------------

    def neg(self, P: CurvePoint) -> CurvePoint:
        assert P.curve == self, "point from a different curve"
        if P.is_infinity:
            return P
        return CurvePoint(self, P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        assert P.curve == self and Q.curve == self, "point from a different curve"
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y2 == -y1 - self.a1 * x1 - self.a3:
                return self.infinity()
            # now P == Q with 2y + a1 x + a3 != 0: tangent line
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) \
                / (2 * y1 + self.a1 * x1 + self.a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return CurvePoint(self, x3, y3)

    def double(self, P: CurvePoint) -> CurvePoint:
        return self.add(P, P)

    def smul(self, n: int, P: CurvePoint) -> CurvePoint:
        """n*P by double-and-add."""
        assert P.curve == self, "point from a different curve"
        if n < 0:
            return self.smul(-n, self.neg(P))
        acc = self.infinity()
        base = P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    # -- misc -----------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, WeierstrassCurve) and self.ctx == other.ctx
                and self.a1 == other.a1 and self.a2 == other.a2
                and self.a3 == other.a3 and self.a4 == other.a4
                and self.a6 == other.a6)

    __hash__ = None

    def __repr__(self):
        return ("Curve(a1=%s, a2=%s, a3=%s, a4=%s, a6=%s)"
                % (self.a1, self.a2, self.a3, self.a4, self.a6))

    def to_obj(self):
        return {"a1": self.a1.to_obj(), "a2": self.a2.to_obj(), "a3": self.a3.to_obj(),
                "a4": self.a4.to_obj(), "a6": self.a6.to_obj()}


# ----------------------------------------------------------------------
# Family helpers.

def legendre_form_curve(t: RatFunc) -> WeierstrassCurve:
    """y^2 = x (x + 1) (x + t), i.e. a2 = 1 + t, a4 = t, a6 = 0."""
    ctx = t.ctx
    zero = RatFunc.zero(ctx)
    return WeierstrassCurve(zero, 1 + t, zero, t, zero)


def two_torsion(curve: WeierstrassCurve) -> tuple[CurvePoint, CurvePoint, CurvePoint]:
    """(0,0), (-1,0), (-t,0) on a Legendre-form curve y^2 = x(x+1)(x+t)."""
    ctx = curve.ctx
    zero = RatFunc.zero(ctx)
    t = curve.a4
    if not (curve.a1.is_zero() and curve.a3.is_zero() and curve.a6.is_zero()
            and curve.a2 == 1 + t):
        raise ValueError("curve is not in y^2 = x(x+1)(x+t) form")
    return (CurvePoint(curve, zero, zero),
            CurvePoint(curve, RatFunc.constant(ctx, -1), zero),
            CurvePoint(curve, -t, zero))


# ----------------------------------------------------------------------
# 2-isogenies and coordinate changes.

class IsogenyMap:
    """Separable 2-isogeny with kernel {O, (0,0)} on y^2 = x^3 + a x^2 + b x.

    x and y maps are ratios of polynomials in the x coordinate:
    x' = xnum(x)/xden(x), y' = y * ynum(x)/yden(x).
    """

    __slots__ = ("domain", "codomain", "xnum", "xden", "ynum", "yden")

    degree = 2

    def __init__(self, domain, codomain, xnum, xden, ynum, yden):
        self.domain = domain
        self.codomain = codomain
        self.xnum = xnum  # lists of RatFunc coefficients, low degree first
        self.xden = xden
        self.ynum = ynum
        self.yden = yden

    @staticmethod
    def _horner(coeffs, x: RatFunc) -> RatFunc:
        acc = RatFunc.zero(x.ctx)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def apply(self, P: CurvePoint) -> CurvePoint:
        assert P.curve == self.domain, "point not on the isogeny domain"
        if P.is_infinity:
            return self.codomain.infinity()
        xd = self._horner(self.xden, P.x)
        if xd.is_zero():
            return self.codomain.infinity()
        x2 = self._horner(self.xnum, P.x) / xd
        y2 = P.y * self._horner(self.ynum, P.x) / self._horner(self.yden, P.x)
        return self.codomain.point(x2, y2)

    def to_obj(self):
        return {
            "degree": 2,
            "domain": self.domain.to_obj(),
            "codomain": self.codomain.to_obj(),
            "x_map": {"num": [c.to_obj() for c in self.xnum],
                      "den": [c.to_obj() for c in self.xden]},
            "y_map": {"num": [c.to_obj() for c in self.ynum],
                      "den": [c.to_obj() for c in self.yden]},
        }


def two_isogeny_quotient(curve: WeierstrassCurve) -> IsogenyMap:
    """Quotient of y^2 = x^3 + a x^2 + b x by the 2-torsion point (0,0).

    Codomain y^2 = x^3 - 2a x^2 + (a^2 - 4b) x, with
    x' = x + a + b/x and y' = y (1 - b/x^2).
    """
    ctx = curve.ctx
    if not (curve.a1.is_zero() and curve.a3.is_zero() and curve.a6.is_zero()):
        raise ValueError("expected y^2 = x^3 + a x^2 + b x")
    a, b = curve.a2, curve.a4
    if b.is_zero():
        raise ValueError("(0,0) must be a nonsingular 2-torsion point")
    zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
    codomain = WeierstrassCurve(zero, -2 * a, zero, a * a - 4 * b, zero)
    return IsogenyMap(curve, codomain,
                      xnum=[b, a, one], xden=[zero, one],
                      ynum=[-b, zero, one], yden=[zero, zero, one])


class CoordChange:
    """Invertible substitution x = w^2 x' + r, y = w^3 y' + s w^2 x' + t_.

    forward() maps points of the original curve to the transformed one,
    backward() inverts.
    """

    __slots__ = ("domain", "codomain", "r", "s", "t_", "w")

    def __init__(self, domain, codomain, r, s, t_, w):
        self.domain = domain
        self.codomain = codomain
        self.r, self.s, self.t_, self.w = r, s, t_, w

    def forward(self, P: CurvePoint) -> CurvePoint:
        assert P.curve == self.domain, "point not on the source curve"
        if P.is_infinity:
            return self.codomain.infinity()
        w2 = self.w * self.w
        x2 = (P.x - self.r) / w2
        y2 = (P.y - self.s * (P.x - self.r) - self.t_) / (w2 * self.w)
        return self.codomain.point(x2, y2)

    def backward(self, P: CurvePoint) -> CurvePoint:
        assert P.curve == self.codomain, "point not on the target curve"
        if P.is_infinity:
            return self.domain.infinity()
        w2 = self.w * self.w
        x1 = w2 * P.x + self.r
        y1 = w2 * self.w * P.y + self.s * w2 * P.x + self.t_
        return self.domain.point(x1, y1)


def change_coords(curve: WeierstrassCurve, r, s, t_, w) -> tuple[WeierstrassCurve, CoordChange]:
    """Transformed curve and the point map for x = w^2 x' + r,
    y = w^3 y' + s w^2 x' + t_.  Preserves j."""
    ctx = curve.ctx

    def co(v):
        return v if isinstance(v, RatFunc) else RatFunc.constant(ctx, v)

    r, s, t_, w = co(r), co(s), co(t_), co(w)
    if w.is_zero():
        raise ValueError("w must be invertible")
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    na1 = (a1 + 2 * s) / w
    na2 = (a2 - s * a1 + 3 * r - s * s) / (w ** 2)
    na3 = (a3 + r * a1 + 2 * t_) / (w ** 3)
    na4 = (a4 - s * a3 + 2 * r * a2 - (t_ + r * s) * a1 + 3 * r * r - 2 * s * t_) / (w ** 4)
    na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t_ * a3 - t_ * t_ - r * t_ * a1) / (w ** 6)
    new_curve = WeierstrassCurve(na1, na2, na3, na4, na6)
    assert new_curve.j_invariant() == curve.j_invariant(), "j must be preserved"
    return new_curve, CoordChange(curve, new_curve, r, s, t_, w)


# ----------------------------------------------------------------------
# The 2-isogeny chain from y^2 + xy + (t/16) y = x^3 + (t/16) x^2 down to
# the Legendre-form curve y^2 = x(x+1)(x+t).

class IsogenyChain:
    """Holds the curves and maps of the chain; forward() composes the
    whole pipeline, backward() is a 2-isogeny section built from the
    dual (so forward(backward(R)) = 2 * conjugated R, but always lands on
    a valid point)."""

    __slots__ = ("t", "source", "mid", "quotient", "legendre",
                 "_m1", "_m2", "_m3", "phi", "_m5", "_dual_phi", "_dual_scale")

    def __init__(self, t: RatFunc):
        ctx = t.ctx
        zero = RatFunc.zero(ctx)
        one = RatFunc.one(ctx)
        tp = t / 16
        self.t = t
        # y^2 + x y + t' y = x^3 + t' x^2 with t' = t/16
        self.source = WeierstrassCurve(one, tp, tp, zero, zero)
        inv2 = RatFunc.constant(ctx, 2).inv()
        c1, self._m1 = change_coords(self.source, 0, -inv2, -t / 32, 1)
        c2, self._m2 = change_coords(c1, -t / 16, 0, 0, 1)
        self.mid, self._m3 = change_coords(c2, 0, 0, 0, RatFunc.constant(ctx, 4).inv())
        assert self.mid == self.expected_mid(), "first displayed model"
        self.phi = two_isogeny_quotient(self.mid)
        self.quotient = self.phi.codomain
        assert self.quotient == self.expected_quotient(), "second displayed model"
        self.legendre, self._m5 = change_coords(self.quotient, 4, 0, 0, 2)
        assert self.legendre == legendre_form_curve(t), "must land on y^2 = x(x+1)(x+t)"
        # dual isogeny: quotient of the quotient, rescaled by (x/4, y/8)
        self._dual_phi = two_isogeny_quotient(self.quotient)
        scaled, self._dual_scale = change_coords(self._dual_phi.codomain, 0, 0, 0, 2)
        assert scaled == self.mid, "dual isogeny must land back on the domain"

    def expected_mid(self) -> WeierstrassCurve:
        """y^2 = x^3 + (4 - 2t) x^2 + t^2 x."""
        ctx = self.t.ctx
        zero = RatFunc.zero(ctx)
        return WeierstrassCurve(zero, 4 - 2 * self.t, zero, self.t * self.t, zero)

    def expected_quotient(self) -> WeierstrassCurve:
        """y^2 = x^3 + (4t - 8) x^2 - 16 (t - 1) x = x (x - 4) (x + 4(t-1))."""
        ctx = self.t.ctx
        zero = RatFunc.zero(ctx)
        return WeierstrassCurve(zero, 4 * self.t - 8, zero, -16 * (self.t - 1), zero)

    def forward(self, P: CurvePoint) -> CurvePoint:
        """Source -> Legendre form (three isomorphisms, the 2-isogeny,
        one more isomorphism)."""
        q = self._m3.forward(self._m2.forward(self._m1.forward(P)))
        return self._m5.forward(self.phi.apply(q))

    def backward(self, R: CurvePoint) -> CurvePoint:
        """Legendre form -> source, through the dual isogeny."""
        q = self._dual_scale.forward(self._dual_phi.apply(self._m5.backward(R)))
        return self._m1.backward(self._m2.backward(self._m3.backward(q)))
