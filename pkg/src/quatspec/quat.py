"""Quaternion values and vectorised quaternion kernels.

Two layers live here. :class:`Quaternion` is an immutable scalar value used by
the public API. The ``q*`` functions operate on float arrays whose last axis has
length 4 (coordinates ``w, x, y, z`` in the basis ``1, i, j, k``) and broadcast
like ordinary numpy ufuncs; the root finders run on those.
"""
from __future__ import annotations

import math
from collections import namedtuple
from typing import Iterable, Union

import numpy as np

Number = Union[int, float]


class Quaternion(namedtuple("Quaternion", "w x y z")):
    """Immutable quaternion ``w + x*i + y*j + z*k``.

    >>> I, J = Quaternion(0, 1), Quaternion(0, 0, 1)
    >>> I * J
    Quaternion(w=0.0, x=0.0, y=0.0, z=1.0)
    >>> J * I
    Quaternion(w=0.0, x=0.0, y=0.0, z=-1.0)
    """

    __slots__ = ()

    def __new__(cls, w: Number = 0.0, x: Number = 0.0, y: Number = 0.0, z: Number = 0.0):
        return super().__new__(cls, float(w), float(x), float(y), float(z))

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Build a quaternion from a number, a 4-sequence or another quaternion."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, np.integer, np.floating)):
            return cls(float(value))
        arr = np.asarray(value, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 quaternion coordinates, got shape {arr.shape}")
        return cls(*arr.tolist())

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return mul(o, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return mul(self, inv(o))

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    norm = __abs__

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def is_real(self, tol: float = 0.0) -> bool:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2) <= tol * (1.0 + abs(self))

    def inv(self) -> "Quaternion":
        return inv(self)

    def to_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return isclose(self, other, tol)

    def __str__(self) -> str:
        return format_quaternion(self)


ONE = Quaternion(1.0)
ZERO = Quaternion()
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def _coerce_or_none(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float, np.integer, np.floating)):
        return Quaternion(float(value))
    return None


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p*q``."""
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def inv(q: Quaternion) -> Quaternion:
    """Multiplicative inverse ``conj(q)/|q|^2``."""
    n2 = q.norm2()
    if n2 == 0.0:
        raise ZeroDivisionError("non-invertible quaternion")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def similar(p: Quaternion, q: Quaternion, tol: float = 0.0) -> bool:
    """True when ``p`` and ``q`` have the same norm and the same real part."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    p, q = Quaternion.coerce(p), Quaternion.coerce(q)
    slack = tol * (1.0 + abs(p) + abs(q))
    return abs(abs(p) - abs(q)) <= slack and abs(p.w - q.w) <= slack


def isclose(p, q, tol: float = 1e-12) -> bool:
    """Approximate equality scaled by the operand magnitudes."""
    p, q = Quaternion.coerce(p), Quaternion.coerce(q)
    return abs(p - q) <= tol * (1.0 + abs(p) + abs(q))


def product(factors: Iterable[Quaternion]) -> Quaternion:
    out = ONE
    for f in factors:
        out = mul(out, f)
    return out


# -- text formatting ----------------------------------------------------------
_UNICODE_UNITS = ("", "𝐢", "𝐣", "𝐤")
_ASCII_UNITS = ("", "i", "j", "k")


def _fmt_num(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def format_quaternion(q, ascii: bool = True) -> str:
    """Render ``q`` as e.g. ``1-i+2j-2k``.

    ``ascii=False`` uses bold unit symbols and the unicode minus sign.
    """
    units = _ASCII_UNITS if ascii else _UNICODE_UNITS
    q = Quaternion.coerce(q)
    parts = []
    for coeff, unit in zip(q, units):
        if coeff == 0.0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = _fmt_num(mag) if (not unit or mag != 1.0) else ""
        parts.append((sign, body + unit))
    if not parts:
        return "0"
    minus = "-" if ascii else "\u2212"
    first_sign, first = parts[0]
    text = (minus if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += (minus if sign == "-" else sign) + body
    return text


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``"1,0,-2,0"``, ``"[1,0,-2,0]"`` or a symbolic form like ``"1-i+2.5j"``."""
    s = text.strip().replace(" ", "")
    s = s.replace("𝐢", "i").replace("𝐣", "j").replace("𝐤", "k").replace("−", "-")
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if "," in s:
        vals = [float(t) for t in s.split(",")]
        if len(vals) != 4:
            raise ValueError(f"expected 4 comma-separated numbers, got {text!r}")
        return Quaternion(*vals)
    if not s:
        raise ValueError("empty quaternion literal")
    coords = [0.0, 0.0, 0.0, 0.0]
    idx = {"i": 1, "j": 2, "k": 3}
    pos = 0
    while pos < len(s):
        start = pos
        if s[pos] in "+-":
            pos += 1
        elif pos > 0:
            raise ValueError(f"missing sign between terms in {text!r}")
        # number with optional exponent
        while pos < len(s) and (s[pos].isdigit() or s[pos] == "." or
                                (s[pos] in "eE" and pos + 1 < len(s)
                                 and (s[pos + 1].isdigit() or s[pos + 1] in "+-"))):
            if s[pos] in "eE":
                pos += 2
            else:
                pos += 1
        num = s[start:pos]
        unit = s[pos] if pos < len(s) and s[pos] in idx else ""
        if unit:
            pos += 1
        if num in ("", "+", "-"):
            if not unit:
                raise ValueError(f"cannot parse quaternion {text!r}")
            num += "1"
        try:
            coords[idx.get(unit, 0)] += float(num)
        except ValueError:
            raise ValueError(f"cannot parse quaternion {text!r}") from None
    return Quaternion(*coords)


# -- array kernels --------------------------------------------------------------
def as_qarray(value) -> np.ndarray:
    """Coerce a quaternion, sequence of quaternions or array to float ``(..., 4)``."""
    if isinstance(value, Quaternion):
        return np.array(value, dtype=float)
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        return np.array([float(arr), 0.0, 0.0, 0.0])
    if arr.shape[-1] != 4:
        raise ValueError(f"last axis must have length 4, got shape {arr.shape}")
    return arr


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcast Hamilton product over the leading axes."""
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    out[..., 0] = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
    out[..., 1] = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
    out[..., 2] = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
    out[..., 3] = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
    return out


def qmul_chain(*factors: np.ndarray) -> np.ndarray:
    out = factors[0]
    for f in factors[1:]:
        out = qmul(out, f)
    return out


def qconj(a: np.ndarray) -> np.ndarray:
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(a * a, axis=-1))


def qinv(a: np.ndarray) -> np.ndarray:
    """Elementwise inverse; zero entries produce inf/nan rather than raising."""
    n2 = np.sum(a * a, axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        return qconj(a) / n2


def qreal(x) -> np.ndarray:
    """Embed real numbers as quaternions."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape + (4,))
    out[..., 0] = x
    return out


def qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of quaternionic matrices stored as ``(n, m, 4)`` and ``(m, p, 4)``."""
    return qmul(a[:, :, None, :], b[None, :, :, :]).sum(axis=1)


def qeye(n: int) -> np.ndarray:
    out = np.zeros((n, n, 4))
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def random_quaternions(rng: np.random.Generator, size=(), scale: float = 1.0) -> np.ndarray:
    """Gaussian quaternion coordinates, shape ``size + (4,)``."""
    if isinstance(size, int):
        size = (size,)
    return scale * rng.standard_normal(tuple(size) + (4,))
