"""Short-Weierstrass curve arithmetic and ECDH key agreement.

Curves have the fixed form y^2 = x^3 - 3x + b (mod p). Points are affine
``(x, y)`` tuples with ``None`` as the point at infinity. ``point_add`` is
the plain chord-tangent group law; ``scalar_mul`` runs double-and-add over
Jacobian coordinates internally (with the a = -3 doubling shortcut) so
256-bit work stays fast, converting back to affine at the end.

This is simulation-grade arithmetic: correct and auditable, not
constant-time, and unsuitable for protecting real secrets.

Two parameter sets ship with the package: ``TOY_CURVE`` (p = 97, small
enough to verify exhaustively) and ``P256`` (the standard 256-bit a = -3
curve).
"""

import random
from dataclasses import dataclass, field

from ..errors import CurveError, KeyAgreementError, ValidationError

INFINITY = None


def _is_probable_prime(n, rounds=16):
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(0xC0FFEE)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class CurveParams:
    """Domain parameters (p, a, b, G, n, h) with a pinned to -3 mod p."""

    p: int
    a: int
    b: int
    gx: int
    gy: int
    n: int
    h: int = 1
    _base_table: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.a % self.p != (self.p - 3) % self.p:
            raise CurveError("curve coefficient a must equal -3 mod p")
        if not _is_probable_prime(self.p):
            raise CurveError("modulus p must be prime")
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise CurveError("singular curve: 4a^3 + 27b^2 = 0 mod p")
        if not is_on_curve((self.gx, self.gy), self):
            raise CurveError("base point G is not on the curve")
        if self.n < 2:
            raise CurveError("group order n must be >= 2")
        if self.h < 1:
            raise CurveError("cofactor h must be >= 1")
        if scalar_mul(self.n, (self.gx, self.gy), self) is not INFINITY:
            raise CurveError("n * G must be the point at infinity")

    @property
    def g(self):
        return (self.gx, self.gy)

    def enumerate_points(self):
        """All affine points plus infinity; only sensible for tiny p."""
        if self.p > 10_000:
            raise CurveError("refusing to enumerate a large curve")
        squares = {}
        for y in range(self.p):
            squares.setdefault(y * y % self.p, []).append(y)
        pts = [INFINITY]
        for x in range(self.p):
            rhs = (x * x * x + self.a * x + self.b) % self.p
            for y in squares.get(rhs, ()):
                pts.append((x, y))
        return pts

    def verify_cofactor(self):
        """Check h = |E(F_p)| / n by full enumeration (toy curves only)."""
        return len(self.enumerate_points()) == self.h * self.n


def is_on_curve(point, curve):
    if point is INFINITY:
        return True
    x, y = point
    return (y * y - (x * x * x + curve.a * x + curve.b)) % curve.p == 0


def _require_on_curve(point, curve):
    if point is not INFINITY:
        x, y = point
        if not (0 <= x < curve.p and 0 <= y < curve.p) or not is_on_curve(point, curve):
            raise CurveError(f"point {point} is not on the curve")


def point_neg(point, curve):
    if point is INFINITY:
        return INFINITY
    x, y = point
    return (x, (-y) % curve.p)


def point_add(p1, p2, curve):
    """Chord-tangent group law on validated affine points."""
    _require_on_curve(p1, curve)
    _require_on_curve(p2, curve)
    if p1 is INFINITY:
        return p2
    if p2 is INFINITY:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    p = curve.p
    if x1 == x2 and (y1 + y2) % p == 0:
        return INFINITY
    if p1 == p2:
        lam = (3 * x1 * x1 + curve.a) * pow(2 * y1, p - 2, p) % p
    else:
        lam = (y2 - y1) * pow((x2 - x1) % p, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


# --- Jacobian internals -----------------------------------------------------
# (X, Y, Z) represents affine (X/Z^2, Y/Z^3); Z = 0 is infinity.


def _jac_double(pt, curve):
    X, Y, Z = pt
    p = curve.p
    if Y == 0 or Z == 0:
        return (0, 1, 0)
    zz = Z * Z % p
    s = 4 * X * Y % p * Y % p
    m = 3 * (X - zz) % p * (X + zz) % p  # a = -3 shortcut
    x3 = (m * m - 2 * s) % p
    y8 = 8 * Y % p * Y % p * Y % p * Y % p
    y3 = (m * (s - x3) - y8) % p
    z3 = 2 * Y * Z % p
    return (x3, y3, z3)


def _jac_add_affine(pt, q, curve):
    """Add an affine point q to a Jacobian point (mixed addition)."""
    X1, Y1, Z1 = pt
    if Z1 == 0:
        return (q[0], q[1], 1)
    x2, y2 = q
    p = curve.p
    z1z1 = Z1 * Z1 % p
    u2 = x2 * z1z1 % p
    s2 = y2 * z1z1 % p * Z1 % p
    if u2 == X1:
        if s2 != Y1:
            return (0, 1, 0)
        return _jac_double(pt, curve)
    h = (u2 - X1) % p
    r = (s2 - Y1) % p
    hh = h * h % p
    hhh = hh * h % p
    v = X1 * hh % p
    x3 = (r * r - hhh - 2 * v) % p
    y3 = (r * (v - x3) - Y1 * hhh) % p
    z3 = Z1 * h % p
    return (x3, y3, z3)


def _jac_to_affine(pt, curve):
    X, Y, Z = pt
    if Z == 0:
        return INFINITY
    p = curve.p
    zi = pow(Z, p - 2, p)
    zi2 = zi * zi % p
    return (X * zi2 % p, Y * zi2 % p * zi % p)


def _jac_add_jac(p1, p2, curve):
    if p1[2] == 0:
        return p2
    if p2[2] == 0:
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    p = curve.p
    z1z1 = z1 * z1 % p
    z2z2 = z2 * z2 % p
    u1 = x1 * z2z2 % p
    u2 = x2 * z1z1 % p
    s1 = y1 * z2z2 % p * z2 % p
    s2 = y2 * z1z1 % p * z1 % p
    if u1 == u2:
        if s1 != s2:
            return (0, 1, 0)
        return _jac_double(p1, curve)
    h = (u2 - u1) % p
    r = (s2 - s1) % p
    hh = h * h % p
    hhh = hh * h % p
    v = u1 * hh % p
    x3 = (r * r - hhh - 2 * v) % p
    y3 = (r * (v - x3) - s1 * hhh) % p
    z3 = z1 * z2 % p * h % p
    return (x3, y3, z3)


def scalar_mul(k, point, curve):
    """k * P by double-and-add; k may be any nonnegative integer."""
    if k < 0:
        raise ValueError("scalar must be nonnegative")
    _require_on_curve(point, curve)
    if k == 0 or point is INFINITY:
        return INFINITY
    acc = (0, 1, 0)
    add = (point[0], point[1], 1)
    while k:
        if k & 1:
            acc = _jac_add_jac(acc, add, curve)
        k >>= 1
        if k:
            add = _jac_double(add, curve)
    return _jac_to_affine(acc, curve)


def _base_table(curve, window=4):
    """Precomputed multiples of G for fixed-base multiplication."""
    if curve._base_table is None:
        steps = (curve.n.bit_length() + window - 1) // window
        table = []
        base = curve.g
        for _ in range(steps):
            row = [INFINITY]
            for _ in range((1 << window) - 1):
                row.append(point_add(row[-1], base, curve))
            table.append(row)
            jac = (base[0], base[1], 1)
            for _ in range(window):
                jac = _jac_double(jac, curve)
            base = _jac_to_affine(jac, curve)
        curve._base_table = table
    return curve._base_table


def mul_base(k, curve, window=4):
    """k * G using the cached fixed-base window table."""
    if k < 0:
        raise ValueError("scalar must be nonnegative")
    if curve.n.bit_length() <= 4 * window:
        # tiny groups: the window table can hit the identity mid-row
        return scalar_mul(k, curve.g, curve)
    table = _base_table(curve, window)
    acc = (0, 1, 0)
    mask = (1 << window) - 1
    i = 0
    while k:
        digit = k & mask
        if digit:
            entry = table[i][digit]
            if entry is not INFINITY:
                acc = _jac_add_affine(acc, entry, curve)
        k >>= window
        i += 1
    return _jac_to_affine(acc, curve)


# ---------------------------------------------------------------------------
# key agreement


@dataclass(frozen=True)
class KeyPair:
    private: int
    public: tuple


def keygen(curve, rng_seed):
    """Uniform private key in [1, n-1]; deterministic for a given seed."""
    rng = random.Random(rng_seed)
    private = rng.randrange(1, curve.n)
    return KeyPair(private, mul_base(private, curve))


def ecdh(my_private, their_public, curve):
    """Shared secret: x-coordinate of my_private * their_public."""
    if their_public is INFINITY:
        raise KeyAgreementError("peer public key is the point at infinity")
    if not is_on_curve(their_public, curve):
        raise KeyAgreementError("peer public key is not on the curve")
    if not 1 <= my_private < curve.n:
        raise KeyAgreementError("private key out of range")
    shared = scalar_mul(my_private, their_public, curve)
    if shared is INFINITY:
        raise KeyAgreementError("degenerate shared point")
    return shared[0]


# ---------------------------------------------------------------------------
# bundled parameter sets and the hex file format: p,a,b,Gx,Gy,n,h


def _toy_curve():
    # order 107 is prime, so the group is cyclic and h = 1
    return CurveParams(p=97, a=94, b=6, gx=0, gy=43, n=107, h=1)


def _p256():
    p = 0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF
    return CurveParams(
        p=p,
        a=p - 3,
        b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
        gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
        gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
        n=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
        h=1,
    )


TOY_CURVE = _toy_curve()
P256 = _p256()


def parse_curve_text(text):
    """Parse ``p,a,b,Gx,Gy,n,h`` hex fields; '#' lines are comments."""
    payload = None
    lineno = 0
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if payload is not None:
            raise ValidationError("multiple parameter lines", line=i)
        payload, lineno = stripped, i
    if payload is None:
        raise ValidationError("no curve parameters found")
    fields = [f.strip() for f in payload.split(",")]
    if len(fields) != 7:
        raise ValidationError(
            f"expected 7 comma-separated hex fields, got {len(fields)}", line=lineno
        )
    try:
        p, a, b, gx, gy, n, h = (int(f, 16) for f in fields)
    except ValueError as exc:
        raise ValidationError(f"bad hex field: {exc}", line=lineno) from exc
    try:
        return CurveParams(p=p, a=a, b=b, gx=gx, gy=gy, n=n, h=h)
    except CurveError as exc:
        raise ValidationError(str(exc), line=lineno) from exc


def curve_to_text(curve):
    return (
        "# p,a,b,Gx,Gy,n,h (hex)\n"
        + ",".join(
            format(v, "x")
            for v in (curve.p, curve.a, curve.b, curve.gx, curve.gy, curve.n, curve.h)
        )
        + "\n"
    )


def load_curve_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_curve_text(fh.read())


def save_curve_file(curve, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(curve_to_text(curve))
