"""Exact polynomial arithmetic over the rationals.

UniPoly is dense (coefficient tuple, index = degree); BiPoly is a sparse map
from exponent pairs to coefficients.  PolySeries holds a power series in an
auxiliary variable t, truncated at a fixed order, whose coefficients are
UniPoly or BiPoly values.  The real-root counters use Sturm sequences on the
square-free part and never touch floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class UniPoly:
    """Univariate polynomial with Fraction coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> "UniPoly":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return UniPoly(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return UniPoly(), UniPoly(rem)
        quot = [Fraction(0)] * dq
        lead = other.coeffs[-1]
        db = len(other.coeffs) - 1
        for i in range(dq - 1, -1, -1):
            c = rem[i + db] / lead
            quot[i] = c
            if c:
                for j, cb in enumerate(other.coeffs):
                    rem[i + j] -= c * cb
        return UniPoly(quot), UniPoly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Return self(inner(x))."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self, order: int = 1) -> "UniPoly":
        p = self
        for _ in range(order):
            p = UniPoly(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self / self.leading

    def shift_degree(self, n: int) -> "UniPoly":
        """Multiply by x**n."""
        if self.is_zero():
            return self
        return UniPoly([0] * n + list(self.coeffs))

    def is_palindromic(self, degree: int | None = None) -> bool:
        d = self.degree if degree is None else degree
        return all(self[i] == self[d - i] for i in range(d + 1))

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self.coeffs, "x")

    def to_json(self, var: str = "x") -> dict:
        return {"var": var, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "UniPoly":
        if "coeffs" not in data:
            raise ValueError("polynomial JSON needs a 'coeffs' list")
        return cls(Fraction(str(c)) for c in data["coeffs"])


def format_poly(coeffs: Sequence[Fraction], var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(var if i == 1 else f"{var}^{i}")
        else:
            terms.append(f"{c}*{var}" if i == 1 else f"{c}*{var}^{i}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class BiPoly:
    """Sparse bivariate polynomial: {(i, j): c} for c * x**i * y**j."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = _frac(c)
                if c != 0:
                    self.terms[(int(key[0]), int(key[1]))] = c

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_uni(cls, p: UniPoly, var: int = 0) -> "BiPoly":
        if var == 0:
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, i): c for i, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def degree(self, var: int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(i + j for i, j in self.terms)
        return max(key[var] for key in self.terms)

    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly({(0, 0): other})
        if isinstance(other, UniPoly):
            return BiPoly.from_uni(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c / other for k, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = self._coerce(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(("BiPoly", frozenset(self.terms.items())))

    def __call__(self, x, y):
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), Fraction(0))

    def partial_derivative(self, var: int = 0, order: int = 1) -> "BiPoly":
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[var]
            if e < order:
                continue
            falling = 1
            for t in range(order):
                falling *= e - t
            key = (i - order, j) if var == 0 else (i, j - order)
            out[key] = c * falling
        return BiPoly(out)

    def substitute(self, x_expr, y_expr):
        """Evaluate at x = x_expr, y = y_expr.

        The substitutes may be rationals, UniPoly or BiPoly values; the result
        lives in the richest ring involved (Fraction < UniPoly < BiPoly).
        """
        exprs = (x_expr, y_expr)
        if any(isinstance(e, BiPoly) for e in exprs):
            one = BiPoly.const(1)
            xs, ys = (BiPoly._coerce(e) for e in exprs)
        elif any(isinstance(e, UniPoly) for e in exprs):
            one = UniPoly.const(1)
            xs, ys = (UniPoly._coerce(e) for e in exprs)
        else:
            one = Fraction(1)
            xs, ys = (_frac(e) for e in exprs)
        if not self.terms:
            return one * 0
        max_i = max(i for i, _ in self.terms)
        max_j = max(j for _, j in self.terms)
        xp = [one]
        for _ in range(max_i):
            xp.append(xp[-1] * xs)
        yp = [one]
        for _ in range(max_j):
            yp.append(yp[-1] * ys)
        acc = one * 0
        for (i, j), c in sorted(self.terms.items()):
            acc = acc + (xp[i] * yp[j]) * c
        return acc

    def coefficient_in(self, var: int, power: int) -> UniPoly:
        """Coefficient of var**power, as a UniPoly in the other variable."""
        other = 1 - var
        coeffs: dict = {}
        for key, c in self.terms.items():
            if key[var] == power:
                coeffs[key[other]] = c
        if not coeffs:
            return UniPoly()
        return UniPoly(coeffs.get(i, 0) for i in range(max(coeffs) + 1))

    def __repr__(self):
        return f"BiPoly({ {k: str(c) for k, c in sorted(self.terms.items())} })"

    def __str__(self):
        return self.format("x", "y")

    def format(self, xname: str, yname: str) -> str:
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else (xname if i == 1 else f"{xname}^{i}"),
                    "" if j == 0 else (yname if j == 1 else f"{yname}^{j}"),
                ) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self, names: Sequence[str] = ("x", "y")) -> dict:
        return {
            "vars": list(names),
            "terms": [[i, j, str(c)] for (i, j), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BiPoly":
        return cls({(t[0], t[1]): Fraction(str(t[2])) for t in data["terms"]})


def poly_from_json(data: dict) -> UniPoly | BiPoly:
    if "terms" in data:
        return BiPoly.from_json(data)
    return UniPoly.from_json(data)


class PolySeries:
    """Power series in t truncated after t**order.

    Coefficients are ring elements (UniPoly or BiPoly); exactly order+1 are kept.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        c = list(coeffs[: order + 1])
        if not c:
            raise ValueError("series needs at least one coefficient to fix its ring")
        zero = c[0] * 0
        c.extend(zero for _ in range(order + 1 - len(c)))
        self.coeffs = c

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __add__(self, other: "PolySeries") -> "PolySeries":
        n = min(self.order, other.order)
        return PolySeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        n = min(self.order, other.order)
        return PolySeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    def __mul__(self, other):
        if not isinstance(other, PolySeries):
            return PolySeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = self.coeffs[0] * 0
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return PolySeries(out, n)

    def __eq__(self, other):
        if not isinstance(other, PolySeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"PolySeries(order={self.order}, coeffs={self.coeffs!r})"


def _constant_value(c):
    if isinstance(c, UniPoly):
        return c[0] if c.degree <= 0 else None
    if isinstance(c, BiPoly):
        return c.coeff(0, 0) if all(k == (0, 0) for k in c.terms) else None
    return _frac(c)


def series_divide(num: PolySeries, den: PolySeries) -> PolySeries:
    """Return q with den * q == num up to the common truncation order.

    The constant term of den must be a nonzero rational constant.
    """
    c0 = _constant_value(den[0])
    if not c0:
        raise ValueError("denominator series has a non-invertible constant term")
    n = min(num.order, den.order)
    q = []
    for k in range(n + 1):
        acc = num[k]
        for i in range(1, k + 1):
            acc = acc - den[i] * q[k - i]
        q.append(acc / c0)
    return PolySeries(q, n)


# -- real roots ------------------------------------------------------------

def _require_nonzero(p: UniPoly):
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")


def squarefree_part(p: UniPoly) -> UniPoly:
    _require_nonzero(p)
    if p.degree < 1:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: p = lc * prod(q_i ** i) with q_i square-free, coprime."""
    _require_nonzero(p)
    out = []
    if p.degree < 1:
        return out
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w // g
        y = z // g
        i += 1
    return out


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _sign_at(p: UniPoly, x) -> int:
    if x == float("inf"):
        return _sign(p.leading)
    if x == float("-inf"):
        return _sign(p.leading) * (-1 if p.degree % 2 else 1)
    return _sign(p(x))


def sign_variations(seq: Sequence[UniPoly], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _bounds(lo, hi):
    lo = float("-inf") if lo is None else _frac(lo)
    hi = float("inf") if hi is None else _frac(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    return lo, hi


def sturm_distinct_roots(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots in the open interval (lo, hi).

    None stands for an infinite endpoint; roots at finite endpoints are
    excluded.
    """
    _require_nonzero(p)
    lo, hi = _bounds(lo, hi)
    q = squarefree_part(p)
    if q.degree < 1:
        return 0
    seq = sturm_sequence(q)
    # V(lo) - V(hi) counts roots in (lo, hi]
    n = sign_variations(seq, lo) - sign_variations(seq, hi)
    if hi != float("inf") and q(hi) == 0:
        n -= 1
    return n


def real_roots_with_multiplicity(p: UniPoly, lo=None, hi=None) -> int:
    """Real roots counted with multiplicity in the open interval (lo, hi)."""
    _require_nonzero(p)
    return sum(i * sturm_distinct_roots(q, lo, hi) for q, i in squarefree_decomposition(p))


def all_roots_real(p: UniPoly) -> bool:
    return real_roots_with_multiplicity(p) == p.degree


def root_multiplicity(p: UniPoly, a) -> int:
    _require_nonzero(p)
    a = _frac(a)
    lin = UniPoly((-a, 1))
    m = 0
    while p(a) == 0:
        p = p // lin
        m += 1
    return m
