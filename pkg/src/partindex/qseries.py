"""Exact truncated power series and infinite q-product expansion.

``TruncatedSeries`` holds the coefficients of q^0..q^N over the integers or
the Gaussian integers.  ``BivariateSeries`` holds, for each q^n, a dense
polynomial in t.  Every binary operation truncates at the smaller order of
its operands, so no coefficient beyond a known order is ever reported.

Products are described by factor families ``prod_j (1 + c_j t^(s_j) q^(e_j))^(+-1)``
with ``e_j = q_start + q_step * j`` and ``s_j = t_start + t_step * j``.
The text form uses compressed Pochhammer notation::

    spec    := factor*
    factor  := group | "1/" group | "1/(" group+ ")"
    group   := "(" mono ("," mono)* ";" mono ")" ["^" INT]
    mono    := ["-"] [INT] ["t" [INT]] ["q" [INT]]

so ``1/((q;q4)(-q3;q4))`` is 1/((q;q^4)_inf (-q^3;q^4)_inf) and
``1/(q,tq2;tq2)`` is 1/((q;tq^2)_inf (tq^2;tq^2)_inf).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from . import kernels
from .partitions import PartitionClass

__all__ = [
    "GaussInt",
    "RingError",
    "TruncatedSeries",
    "BivariateSeries",
    "Monomial",
    "FactorFamily",
    "ProductSpec",
    "pochhammer",
    "parse_product",
    "expand_product",
    "expand_bivariate",
    "enumerate_bivariate",
    "substitute_parity",
    "substitute_cnk",
]


class RingError(ValueError):
    """Raised on mixed-ring arithmetic or on inverting a non-unit."""


@dataclass(frozen=True)
class GaussInt:
    re: int = 0
    im: int = 0

    @staticmethod
    def lift(x: Union[int, "GaussInt"]) -> "GaussInt":
        return x if isinstance(x, GaussInt) else GaussInt(int(x), 0)

    def __add__(self, other):
        o = GaussInt.lift(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussInt.lift(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussInt.lift(other) - self

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussInt.lift(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not ring elements")
        out, base = GaussInt(1, 0), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def is_unit(self) -> bool:
        return self.re * self.re + self.im * self.im == 1

    def unit_inverse(self) -> "GaussInt":
        if not self.is_unit():
            raise RingError(f"{self} is not a unit of Z[i]")
        return self.conjugate()

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}


I = GaussInt(0, 1)

_RINGS = ("int", "gauss")


def _ring_of(values: Iterable) -> str:
    return "gauss" if any(isinstance(v, GaussInt) for v in values) else "int"


class TruncatedSeries:
    """Coefficients of q^0..q^order, exact, over ``int`` or ``gauss``."""

    __slots__ = ("order", "coeffs", "ring")

    def __init__(self, coeffs: Sequence, order: int | None = None, ring: str | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError(f"order must be nonnegative, got {order}")
        ring = ring or _ring_of(coeffs)
        if ring not in _RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        if ring == "gauss":
            coeffs = [GaussInt.lift(c) for c in coeffs]
        else:
            if any(isinstance(c, GaussInt) for c in coeffs):
                raise RingError("Gaussian coefficient in an integer series")
            coeffs = [int(c) for c in coeffs]
        self.order = order
        self.coeffs = tuple(coeffs)
        self.ring = ring

    @classmethod
    def one(cls, order: int, ring: str = "int") -> "TruncatedSeries":
        return cls([1], order, ring)

    @classmethod
    def monomial(cls, c, e: int, order: int, ring: str | None = None) -> "TruncatedSeries":
        coeffs = [0] * (order + 1)
        if e <= order:
            coeffs[e] = c
        return cls(coeffs, order, ring or _ring_of([c]))

    def _zero(self):
        return GaussInt() if self.ring == "gauss" else 0

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        N = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: N + 1], other.coeffs)], N, self.ring)

    def __sub__(self, other):
        self._check(other)
        N = min(self.order, other.order)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs[: N + 1], other.coeffs)], N, self.ring)

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order, self.ring)

    def __mul__(self, other):
        if isinstance(other, (int, GaussInt)):
            if isinstance(other, GaussInt) and self.ring != "gauss":
                raise RingError("Gaussian scalar times an integer series")
            return TruncatedSeries([a * other for a in self.coeffs], self.order, self.ring)
        self._check(other)
        N = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(N + 1):
            acc = self._zero()
            for k in range(n + 1):
                ak = a[k]
                if ak:
                    acc = acc + ak * b[n - k]
            out.append(acc)
        return TruncatedSeries(out, N, self.ring)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        a0 = self.coeffs[0]
        if self.ring == "gauss":
            if not a0.is_unit():
                raise RingError(f"constant term {a0} is not a unit of Z[i]")
            inv0 = a0.unit_inverse()
        else:
            if a0 not in (1, -1):
                raise RingError(f"constant term {a0} is not a unit of Z")
            inv0 = a0
        a = self.coeffs
        b = [inv0]
        for n in range(1, self.order + 1):
            acc = self._zero()
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * b[n - k]
            b.append(-(inv0 * acc))
        return TruncatedSeries(b, self.order, self.ring)

    def coefficient(self, n: int):
        if n < 0:
            raise ValueError(f"negative exponent {n}")
        if n > self.order:
            raise IndexError(f"coefficient of q^{n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    __getitem__ = coefficient

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order, self.ring)

    def is_real(self) -> bool:
        return self.ring == "int" or all(c.im == 0 for c in self.coeffs)

    def real_part(self) -> "TruncatedSeries":
        if self.ring == "int":
            return self
        return TruncatedSeries([c.re for c in self.coeffs], self.order, "int")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.ring, self.coeffs))

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        head = ", ".join(map(str, self.coeffs[:8]))
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{head}{more}], order={self.order}, ring={self.ring!r})"

    def to_json(self) -> dict:
        if self.ring == "gauss":
            coeffs = [c.to_json() for c in self.coeffs]
        else:
            coeffs = [str(c) for c in self.coeffs]
        return {"order": self.order, "coeffs": coeffs}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict | str) -> "TruncatedSeries":
        if isinstance(obj, str):
            obj = json.loads(obj)
        raw = obj["coeffs"]
        if raw and isinstance(raw[0], dict):
            return cls([GaussInt(int(c["re"]), int(c["im"])) for c in raw], obj["order"], "gauss")
        return cls([int(c) for c in raw], obj["order"], "int")


def _poly_trim(p: list[int]) -> tuple[int, ...]:
    end = len(p)
    while end and p[end - 1] == 0:
        end -= 1
    return tuple(p[:end])


def _poly_add_shift(dst: list[int], src: Sequence[int], c: int, shift: int):
    """dst += c * t^shift * src, in place."""
    need = len(src) + shift
    if len(dst) < need:
        dst.extend([0] * (need - len(dst)))
    for k, v in enumerate(src):
        if v:
            dst[k + shift] += c * v


class BivariateSeries:
    """Coefficients of q^0..q^order, each a dense integer polynomial in t.

    ``coeffs[n][k]`` is the coefficient of t^k q^n; polynomials are stored
    without trailing zeros.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[Sequence[int]], order: int | None = None):
        coeffs = [list(map(int, p)) for p in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError(f"order must be nonnegative, got {order}")
        coeffs = coeffs[: order + 1] + [[] for _ in range(order + 1 - len(coeffs))]
        self.order = order
        self.coeffs = tuple(_poly_trim(p) for p in coeffs)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], int], order: int) -> "BivariateSeries":
        """Build from {(k, n): coefficient of t^k q^n}; terms with n > order are dropped."""
        coeffs = [[] for _ in range(order + 1)]
        for (k, n), c in terms.items():
            if n > order:
                continue
            if k < 0 or n < 0:
                raise ValueError(f"negative exponent in term t^{k} q^{n}")
            _poly_add_shift(coeffs[n], [c], 1, k)
        return cls(coeffs, order)

    @classmethod
    def one(cls, order: int) -> "BivariateSeries":
        return cls([[1]], order)

    def coefficient(self, k: int, n: int) -> int:
        """Coefficient of t^k q^n."""
        if n > self.order:
            raise IndexError(f"coefficient of q^{n} is beyond truncation order {self.order}")
        p = self.coeffs[n]
        return p[k] if 0 <= k < len(p) else 0

    def poly(self, n: int) -> tuple[int, ...]:
        if n > self.order:
            raise IndexError(f"coefficient of q^{n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def terms(self):
        """Yield (k, n, coefficient) for every nonzero coefficient."""
        for n, p in enumerate(self.coeffs):
            for k, c in enumerate(p):
                if c:
                    yield k, n, c

    def t_degree(self, n: int) -> int:
        return len(self.coeffs[n]) - 1

    def __add__(self, other: "BivariateSeries"):
        N = min(self.order, other.order)
        out = []
        for n in range(N + 1):
            p = list(self.coeffs[n])
            _poly_add_shift(p, other.coeffs[n], 1, 0)
            out.append(p)
        return BivariateSeries(out, N)

    def __neg__(self):
        return BivariateSeries([[-c for c in p] for p in self.coeffs], self.order)

    def __sub__(self, other: "BivariateSeries"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariateSeries([[c * other for c in p] for p in self.coeffs], self.order)
        if not isinstance(other, BivariateSeries):
            raise TypeError(f"expected BivariateSeries, got {type(other).__name__}")
        N = min(self.order, other.order)
        out = [[] for _ in range(N + 1)]
        for i in range(N + 1):
            pa = self.coeffs[i]
            if not pa:
                continue
            for j in range(N + 1 - i):
                pb = other.coeffs[j]
                if not pb:
                    continue
                dst = out[i + j]
                for ka, va in enumerate(pa):
                    if va:
                        _poly_add_shift(dst, pb, va, ka)
        return BivariateSeries(out, N)

    def truncate(self, order: int) -> "BivariateSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return BivariateSeries(self.coeffs[: order + 1], order)

    def at_t_one(self) -> TruncatedSeries:
        return TruncatedSeries([sum(p) for p in self.coeffs], self.order, "int")

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"BivariateSeries(order={self.order}, coeffs={list(self.coeffs[:4])}{'...' if self.order >= 4 else ''})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[str(c) for c in p] for p in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "BivariateSeries":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([[int(c) for c in p] for p in obj["coeffs"]], obj["order"])


# -- products ------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """c * t^t_exp * q^q_exp"""

    c: int = 1
    t_exp: int = 0
    q_exp: int = 0

    def __str__(self):
        s = "-" if self.c == -1 else ("" if self.c == 1 else str(self.c))
        if self.t_exp:
            s += "t" + (str(self.t_exp) if self.t_exp != 1 else "")
        if self.q_exp:
            s += "q" + (str(self.q_exp) if self.q_exp != 1 else "")
        return s or "1"


@dataclass(frozen=True)
class FactorFamily:
    """prod_{j>=0} (1 + coefficient(j) t^(t_start + t_step j) q^(q_start + q_step j))^power"""

    coefficient: Callable[[int], int]
    q_start: int
    q_step: int
    power: int = 1
    t_start: int = 0
    t_step: int = 0
    label: str = ""

    def __post_init__(self):
        if self.q_step < 1:
            raise ValueError(f"q exponent step must be >= 1, got {self.q_step}")
        if self.q_start < 1:
            raise ValueError(f"q exponent must start at >= 1, got {self.q_start}")
        if self.power not in (1, -1):
            raise ValueError(f"power must be +1 or -1, got {self.power}")
        if self.t_start < 0 or self.t_step < 0:
            raise ValueError("t exponents must be nonnegative")

    def factors(self, order: int):
        """Yield (c_j, t exponent, q exponent) for every factor with q exponent <= order."""
        j = 0
        while self.q_start + self.q_step * j <= order:
            yield self.coefficient(j), self.t_start + self.t_step * j, self.q_start + self.q_step * j
            j += 1

    @property
    def bivariate(self) -> bool:
        return bool(self.t_start or self.t_step)


class _Geometric:
    # picklable c_j = first * ratio**j
    __slots__ = ("first", "ratio")

    def __init__(self, first: int, ratio: int):
        self.first, self.ratio = first, ratio

    def __call__(self, j: int) -> int:
        return self.first * self.ratio**j

    def __repr__(self):
        return f"{self.first}*({self.ratio})**j"


def pochhammer(a: Monomial, base: Monomial, power: int = 1) -> FactorFamily:
    """(a; base)_inf = prod_j (1 - a base^j), raised to ``power``."""
    return FactorFamily(
        coefficient=_Geometric(-a.c, base.c),
        q_start=a.q_exp,
        q_step=base.q_exp,
        power=power,
        t_start=a.t_exp,
        t_step=base.t_exp,
        label=f"({a};{base})",
    )


@dataclass(frozen=True)
class ProductSpec:
    families: tuple[FactorFamily, ...]
    text: str = ""

    @property
    def bivariate(self) -> bool:
        return any(f.bivariate for f in self.families)

    def __str__(self):
        return self.text or " ".join(f.label or repr(f) for f in self.families)


_MONO = re.compile(r"\s*(-)?\s*(\d+)?\s*(?:(t)\s*(\d+)?)?\s*(?:(q)\s*(\d+)?)?\s*")


def _parse_mono(text: str) -> Monomial:
    m = _MONO.fullmatch(text)
    if not m or not text.strip():
        raise ValueError(f"bad monomial {text!r}")
    sign, c, t, te, q, qe = m.groups()
    coeff = int(c) if c else 1
    if sign:
        coeff = -coeff
    t_exp = (int(te) if te else 1) if t else 0
    q_exp = (int(qe) if qe else 1) if q else 0
    return Monomial(coeff, t_exp, q_exp)


class _Parser:
    def __init__(self, text: str):
        self.s = re.sub(r"\s+", "", text.replace("_inf", "").replace("∞", ""))
        self.i = 0

    def error(self, msg):
        raise ValueError(f"{msg} at position {self.i} in product {self.s!r}")

    def peek(self, k=0):
        j = self.i + k
        return self.s[j] if j < len(self.s) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def group(self, power: int) -> list[FactorFamily]:
        self.expect("(")
        close = self.s.find(")", self.i)
        if close < 0:
            self.error("unclosed group")
        body = self.s[self.i : close]
        self.i = close + 1
        if ";" not in body:
            self.error("group needs ';'")
        left, base = body.rsplit(";", 1)
        reps = 1
        if self.peek() == "^":
            self.i += 1
            m = re.match(r"\d+", self.s[self.i :])
            if not m:
                self.error("expected integer exponent")
            reps = int(m.group())
            self.i += len(m.group())
        base_m = _parse_mono(base)
        fams = []
        for a in left.split(","):
            fams.append(pochhammer(_parse_mono(a), base_m, power))
        return fams * reps

    def parse(self) -> list[FactorFamily]:
        fams: list[FactorFamily] = []
        while self.i < len(self.s):
            if self.s.startswith("1/", self.i):
                self.i += 2
                if self.peek() == "(" and self.peek(1) == "(":
                    self.i += 1
                    while self.peek() == "(":
                        fams += self.group(-1)
                    self.expect(")")
                else:
                    fams += self.group(-1)
            elif self.peek() == "(":
                fams += self.group(1)
            else:
                self.error("expected '(' or '1/'")
        return fams


def parse_product(text: str) -> ProductSpec:
    """Parse compressed Pochhammer notation, e.g. ``1/(q,-q3;q4)``."""
    fams = _Parser(text).parse()
    if not fams:
        raise ValueError(f"empty product {text!r}")
    return ProductSpec(tuple(fams), text.strip())


def _as_spec(spec: ProductSpec | str | Sequence[FactorFamily]) -> ProductSpec:
    if isinstance(spec, str):
        return parse_product(spec)
    if isinstance(spec, ProductSpec):
        return spec
    return ProductSpec(tuple(spec))


def expand_product(spec: ProductSpec | str | Sequence[FactorFamily], order: int) -> TruncatedSeries:
    """Exact expansion of a univariate product to q^order."""
    spec = _as_spec(spec)
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    if spec.bivariate:
        raise ValueError(f"product {spec} involves t; use expand_bivariate")
    a = [1] + [0] * order
    for fam in spec.families:
        for c, _, e in fam.factors(order):
            if not c:
                continue
            if fam.power == 1:
                for n in range(order, e - 1, -1):
                    a[n] += c * a[n - e]
            else:
                for n in range(e, order + 1):
                    a[n] -= c * a[n - e]
    return TruncatedSeries(a, order, "int")


def expand_bivariate(spec: ProductSpec | str | Sequence[FactorFamily], order: int) -> BivariateSeries:
    """Exact expansion of a product in t and q, truncated in q only."""
    spec = _as_spec(spec)
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    a: list[list[int]] = [[1]] + [[] for _ in range(order)]
    for fam in spec.families:
        for c, s, e in fam.factors(order):
            if not c:
                continue
            if fam.power == 1:
                for n in range(order, e - 1, -1):
                    _poly_add_shift(a[n], a[n - e], c, s)
            else:
                for n in range(e, order + 1):
                    _poly_add_shift(a[n], a[n - e], -c, s)
    return BivariateSeries(a, order)


# -- generating functions from enumeration -------------------------------------


def enumerate_bivariate(cls: PartitionClass, order: int) -> BivariateSeries:
    """F_S(t, q): coefficient of t^k q^n counts partitions of n in S with k odd parts.

    Computed by exhaustive enumeration of every partition of n <= order.
    """
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    coeffs: list[Sequence[int]] = [[1]]
    for n in range(1, order + 1):
        tally = kernels.index_census(n, cls.allowed_mask(n), cls.distinct_parts)
        coeffs.append(tally.op_hist)
    return BivariateSeries(coeffs, order)


def _check_parity_structure(F: BivariateSeries):
    for k, n, _ in F.terms():
        if (k - n) % 2:
            raise ValueError(
                f"parity structure violated: nonzero coefficient of t^{k} q^{n} with k, n of different parity"
            )


_I_POW = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


def substitute_parity(F: BivariateSeries) -> TruncatedSeries:
    """F(i, -iq) as a Gaussian-integer series."""
    _check_parity_structure(F)
    out = []
    for n, p in enumerate(F.coeffs):
        acc = GaussInt()
        for k, c in enumerate(p):
            if c:
                acc = acc + _I_POW[k % 4] * c
        # (-i)^n = i^(3n)
        out.append(acc * _I_POW[(3 * n) % 4])
    return TruncatedSeries(out, F.order, "gauss")


def substitute_cnk(F: BivariateSeries, direction: str = "forward") -> BivariateSeries:
    """Replace t by t^(-1/2) and q by t^(1/2) q.

    Realized as an exponent remap: the coefficient of t^k q^n in the result
    is the coefficient of t^(n - 2k) q^n in ``F``.
    """
    if direction != "forward":
        raise ValueError(f"only the forward substitution is supported, got {direction!r}")
    _check_parity_structure(F)
    out = []
    for n, p in enumerate(F.coeffs):
        new = [0] * (n // 2 + 1)
        for j, c in enumerate(p):
            if c:
                if j > n:
                    raise ValueError(f"t-degree {j} exceeds n = {n}; remap would need negative powers")
                new[(n - j) // 2] += c
        out.append(new)
    return BivariateSeries(out, F.order)
