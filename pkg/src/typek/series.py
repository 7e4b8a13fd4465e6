"""Truncated power series with exact rational coefficients.

``MultiSeries`` is a multivariate series truncated in total degree.
``PuiseuxSeries`` is a one-variable series in ``q`` with rational exponents
sharing a single denominator, which is what theta and eta expansions need.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

Exps = Tuple[int, ...]


class SeriesError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MultiSeries:
    """Series in ``nvars`` variables known modulo total degree ``> T``."""

    __slots__ = ("nvars", "T", "c")

    def __init__(self, nvars: int, T: int, coeffs: Optional[Dict[Exps, Fraction]] = None):
        self.nvars = nvars
        self.T = T
        self.c: Dict[Exps, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                k = tuple(k)
                if len(k) != nvars:
                    raise SeriesError(f"exponent {k} has wrong length")
                if sum(k) <= T and v != 0:
                    self.c[k] = _frac(v)

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, nvars: int, T: int, value=1) -> "MultiSeries":
        return cls(nvars, T, {(0,) * nvars: value})

    @classmethod
    def var(cls, nvars: int, T: int, i: int) -> "MultiSeries":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, T, {tuple(e): 1})

    @classmethod
    def from_function(cls, nvars: int, T: int, f: Callable[[Exps], object]) -> "MultiSeries":
        return cls(nvars, T, {k: f(k) for k in monomials(nvars, T)})

    # -- basics -------------------------------------------------------------
    def coeff(self, k: Sequence[int]) -> Fraction:
        return self.c.get(tuple(k), Fraction(0))

    __getitem__ = coeff

    @property
    def constant(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def copy(self) -> "MultiSeries":
        out = MultiSeries(self.nvars, self.T)
        out.c = dict(self.c)
        return out

    def truncate(self, T: int) -> "MultiSeries":
        return MultiSeries(self.nvars, min(T, self.T), self.c)

    def valuation(self) -> Optional[int]:
        return min((sum(k) for k in self.c), default=None)

    def is_zero(self) -> bool:
        return not self.c

    def _coerce(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            if other.nvars != self.nvars:
                raise SeriesError("variable count mismatch")
            return other
        return MultiSeries.const(self.nvars, self.T, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (MultiSeries, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        T = min(self.T, other.T)
        return self.truncate(T).c == other.truncate(T).c

    def __hash__(self):  # pragma: no cover - mutable-ish value type
        return hash((self.nvars, self.T, tuple(sorted(self.c.items()))))

    def __add__(self, other) -> "MultiSeries":
        other = self._coerce(other)
        T = min(self.T, other.T)
        out = dict((k, v) for k, v in self.c.items() if sum(k) <= T)
        for k, v in other.c.items():
            if sum(k) <= T:
                out[k] = out.get(k, 0) + v
        return MultiSeries(self.nvars, T, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiSeries":
        return self.scale(-1)

    def __sub__(self, other) -> "MultiSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiSeries":
        return self._coerce(other) - self

    def scale(self, a) -> "MultiSeries":
        a = _frac(a)
        out = MultiSeries(self.nvars, self.T)
        if a:
            out.c = {k: v * a for k, v in self.c.items()}
        return out

    def __mul__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        other = self._coerce(other)
        T = min(self.T, other.T)
        a = sorted(((sum(k), k, v) for k, v in self.c.items() if sum(k) <= T), key=lambda t: t[0])
        b = sorted(((sum(k), k, v) for k, v in other.c.items() if sum(k) <= T), key=lambda t: t[0])
        out: Dict[Exps, Fraction] = {}
        for da, ka, va in a:
            room = T - da
            for db, kb, vb in b:
                if db > room:
                    break
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return MultiSeries(self.nvars, T, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiSeries.const(self.nvars, self.T)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "MultiSeries":
        c0 = self.constant
        if c0 == 0:
            raise SeriesError("cannot invert a series with zero constant term")
        g = (self - c0).scale(-1 / c0)  # self = c0 (1 - g)
        return _geometric_like(g, [Fraction(1)] * (self.T + 1)).scale(1 / c0)

    def __truediv__(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            return self * other.inverse()
        return self.scale(1 / _frac(other))

    def __rtruediv__(self, other) -> "MultiSeries":
        return self._coerce(other) * self.inverse()

    # -- calculus -----------------------------------------------------------
    def euler(self, i: int) -> "MultiSeries":
        """``z_i d/dz_i``."""
        return MultiSeries(self.nvars, self.T, {k: v * k[i] for k, v in self.c.items()})

    def derivative(self, i: int) -> "MultiSeries":
        """``d/dz_i`` (precision drops by one)."""
        out = {}
        for k, v in self.c.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                out[tuple(kk)] = v * k[i]
        return MultiSeries(self.nvars, self.T - 1, out)

    def exp(self) -> "MultiSeries":
        if self.constant != 0:
            raise SeriesError("exp needs zero constant term")
        coeffs = [Fraction(1)]
        for k in range(1, self.T + 1):
            coeffs.append(coeffs[-1] / k)
        return _geometric_like(self, coeffs)

    def log(self) -> "MultiSeries":
        if self.constant != 1:
            raise SeriesError("log needs constant term 1")
        g = self - 1
        coeffs = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, self.T + 1)]
        return _geometric_like(g, coeffs)

    def sqrt(self) -> "MultiSeries":
        c0 = self.constant
        r = rational_sqrt(c0)
        if r is None or c0 == 0:
            raise SeriesError(f"constant term {c0} is not a nonzero rational square")
        g = (self - c0).scale(1 / c0)
        coeffs = [Fraction(1)]
        for k in range(1, self.T + 1):
            coeffs.append(coeffs[-1] * (Fraction(1, 2) - (k - 1)) / k)
        return _geometric_like(g, coeffs).scale(r)

    def compose(self, subs: Sequence["MultiSeries"]) -> "MultiSeries":
        """``self(subs[0], ..., subs[v-1])``; substitutes need zero constant term."""
        if len(subs) != self.nvars:
            raise SeriesError("need one substitute per variable")
        for s in subs:
            if s.constant != 0:
                raise SeriesError("substitutes need zero constant term")
        nv = subs[0].nvars
        T = min([self.T] + [s.T for s in subs])
        powers: List[List[MultiSeries]] = []
        for s in subs:
            pw = [MultiSeries.const(nv, T)]
            for _ in range(self.T):
                pw.append(pw[-1] * s)
            powers.append(pw)
        out = MultiSeries(nv, T)
        for k, v in self.c.items():
            term = MultiSeries.const(nv, T, v)
            for i, e in enumerate(k):
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    def permute(self, perm: Sequence[int]) -> "MultiSeries":
        """Variable ``i`` of the result is variable ``perm[i]`` of ``self``."""
        out = {}
        for k, v in self.c.items():
            out[tuple(k[perm[i]] for i in range(self.nvars))] = v
        return MultiSeries(self.nvars, self.T, out)

    def homogeneous(self, d: int) -> Dict[Exps, Fraction]:
        return {k: v for k, v in self.c.items() if sum(k) == d}

    def embed(self, nvars: int, positions: Sequence[int]) -> "MultiSeries":
        """View as a series in ``nvars`` variables; variable i goes to ``positions[i]``."""
        out = {}
        for k, v in self.c.items():
            e = [0] * nvars
            for i, p in enumerate(positions):
                e[p] = k[i]
            out[tuple(e)] = v
        return MultiSeries(nvars, self.T, out)

    # -- text ---------------------------------------------------------------
    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        """Canonical sorted-monomial form, one ``coefficient exponents`` per line."""
        lines = [f"# nvars={self.nvars} trunc={self.T}"]
        for k in sorted(self.c, key=lambda e: (sum(e), tuple(-x for x in e))):
            lines.append(f"{' '.join(map(str, k))} {self.c[k]}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        names = [f"z{i + 1}" for i in range(self.nvars)]
        terms = []
        for k in sorted(self.c, key=lambda e: (sum(e), tuple(-x for x in e))):
            mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, k) if e)
            v = self.c[k]
            terms.append(f"{v}*{mono}" if mono else f"{v}")
        return (" + ".join(terms) or "0") + f" + O(deg {self.T + 1})"


def monomials(nvars: int, T: int) -> List[Exps]:
    """All exponent tuples of total degree ``<= T``, graded."""
    out = []
    for d in range(T + 1):
        out += monomials_of_degree(nvars, d)
    return out


def monomials_of_degree(nvars: int, d: int) -> List[Exps]:
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def _geometric_like(g: MultiSeries, coeffs: Sequence[Fraction]) -> MultiSeries:
    """``sum_k coeffs[k] g^k`` for ``g`` with zero constant term."""
    v = g.valuation()
    out = MultiSeries.const(g.nvars, g.T, coeffs[0])
    if v is None:
        return out
    power = MultiSeries.const(g.nvars, g.T)
    for k in range(1, len(coeffs)):
        if k * v > g.T:
            break
        power = power * g
        if coeffs[k]:
            out = out + power.scale(coeffs[k])
    return out


def rational_sqrt(x) -> Optional[Fraction]:
    from math import isqrt

    x = _frac(x)
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def revert_map(qs: Sequence[MultiSeries], max_rounds: Optional[int] = None) -> List[MultiSeries]:
    """Invert ``q_i = z_i u_i(z)`` (``u_i(0) = 1``) to ``z_i(q)`` by fixed-point iteration."""
    nv = len(qs)
    T = min(q.T for q in qs)
    us = []
    for i, q in enumerate(qs):
        e = [0] * nv
        e[i] = 1
        e = tuple(e)
        if q.coeff(e) != 1 or any(sum(k) == 1 and k != e for k in q.c) or q.constant != 0:
            raise SeriesError(f"map component {i} is not z_{i + 1} * (1 + ...)")
        u = MultiSeries(nv, T - 1, {tuple(k[j] - (j == i) for j in range(nv)): v for k, v in q.c.items()})
        if any(x < 0 for k in u.c for x in k):
            raise SeriesError(f"map component {i} is not divisible by z_{i + 1}")
        us.append(u)
    zs = [MultiSeries.var(nv, T, i) for i in range(nv)]
    for _ in range(max_rounds or T + 1):
        new = [_times_var(us[i].compose(zs).inverse(), i, T) for i in range(nv)]
        if all(a.c == b.c for a, b in zip(new, zs)):
            break
        zs = new
    return zs


def _times_var(f: MultiSeries, i: int, T: int) -> MultiSeries:
    """``z_i * f`` where ``f`` is known to degree ``T - 1``."""
    return MultiSeries(f.nvars, T, {k[:i] + (k[i] + 1,) + k[i + 1:]: v for k, v in f.c.items()})


# ---------------------------------------------------------------------------
# Puiseux series


class PuiseuxSeries:
    """``sum c_k q^(k/d)`` known for all exponents ``< prec``."""

    __slots__ = ("d", "c", "prec")

    def __init__(self, d: int, coeffs: Dict[int, Fraction], prec):
        prec = _frac(prec)
        self.d = d
        self.prec = prec
        self.c = {k: _frac(v) for k, v in coeffs.items() if v != 0 and Fraction(k, d) < prec}
        self._normalize()

    def _normalize(self):
        g = self.d
        for k in self.c:
            g = gcd(g, k)
            if g == 1:
                return
        if g > 1:
            self.c = {k // g: v for k, v in self.c.items()}
            self.d //= g

    @classmethod
    def from_exponents(cls, terms: Dict[Fraction, object], prec) -> "PuiseuxSeries":
        d = 1
        for e in terms:
            e = _frac(e)
            d = d * e.denominator // gcd(d, e.denominator)
        return cls(d, {int(_frac(e) * d): v for e, v in terms.items()}, prec)

    def terms(self) -> Dict[Fraction, Fraction]:
        return {Fraction(k, self.d): v for k, v in sorted(self.c.items())}

    def coeff(self, e) -> Fraction:
        e = _frac(e)
        if e >= self.prec:
            raise SeriesError(f"exponent {e} is beyond precision {self.prec}")
        k = e * self.d
        return self.c.get(int(k), Fraction(0)) if k.denominator == 1 else Fraction(0)

    def valuation(self) -> Optional[Fraction]:
        return Fraction(min(self.c), self.d) if self.c else None

    def _rebase(self, d: int) -> Dict[int, Fraction]:
        f = d // self.d
        return {k * f: v for k, v in self.c.items()}

    def _common(self, other: "PuiseuxSeries") -> Tuple[int, Dict[int, Fraction], Dict[int, Fraction]]:
        d = self.d * other.d // gcd(self.d, other.d)
        return d, self._rebase(d), other._rebase(d)

    def _coerce(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            return other
        return PuiseuxSeries(1, {0: _frac(other)}, self.prec)

    def __add__(self, other) -> "PuiseuxSeries":
        other = self._coerce(other)
        d, a, b = self._common(other)
        for k, v in b.items():
            a[k] = a.get(k, 0) + v
        return PuiseuxSeries(d, a, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, a) -> "PuiseuxSeries":
        a = _frac(a)
        return PuiseuxSeries(self.d, {k: v * a for k, v in self.c.items()}, self.prec)

    def __mul__(self, other) -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            prec = min(self.prec + (vb if vb is not None else other.prec),
                       other.prec + (va if va is not None else self.prec))
            return PuiseuxSeries(1, {}, prec)
        prec = min(va + other.prec, vb + self.prec)
        d, a, b = self._common(other)
        lim = prec * d
        out: Dict[int, Fraction] = {}
        bs = sorted(b.items())
        for ka, x in a.items():
            for kb, y in bs:
                if ka + kb >= lim:
                    break
                out[ka + kb] = out.get(ka + kb, 0) + x * y
        return PuiseuxSeries(d, out, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            v = self.valuation() or Fraction(0)
            return PuiseuxSeries(1, {0: 1}, self.prec - v)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, e) -> "PuiseuxSeries":
        """Multiply by ``q^e``."""
        e = _frac(e)
        d = self.d * e.denominator // gcd(self.d, e.denominator)
        s = int(e * d)
        return PuiseuxSeries(d, {k + s: v for k, v in self._rebase(d).items()}, self.prec + e)

    def inverse(self) -> "PuiseuxSeries":
        v = self.valuation()
        if v is None:
            raise SeriesError("cannot invert zero")
        unit = self.shift(-v)  # constant term nonzero, known below prec - v
        c0 = unit.c[0]
        g = (unit - c0).scale(-1 / c0)
        out = PuiseuxSeries(1, {0: 1}, unit.prec)
        term = PuiseuxSeries(1, {0: 1}, unit.prec)
        gv = g.valuation()
        if gv is not None:
            k = 1
            while k * gv < unit.prec:
                term = term * g
                out = out + term
                k += 1
        return out.scale(1 / c0).shift(-v)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.inverse()
        return self.scale(1 / _frac(other))

    def substitute_power(self, r) -> "PuiseuxSeries":
        """``q -> q^r`` for a positive rational ``r``."""
        r = _frac(r)
        if r <= 0:
            raise SeriesError("power must be positive")
        return PuiseuxSeries.from_exponents({e * r: v for e, v in self.terms().items()}, self.prec * r)

    def truncated(self, prec) -> "PuiseuxSeries":
        return PuiseuxSeries(self.d, self.c, min(self.prec, _frac(prec)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.truncated(p).terms() == other.truncated(p).terms()

    def to_power_series(self, step, T: Optional[int] = None) -> MultiSeries:
        """Rewrite in ``s = q^step``; every exponent must be a nonnegative multiple of ``step``."""
        step = _frac(step)
        out = {}
        for e, v in self.terms().items():
            k = e / step
            if k.denominator != 1 or k < 0:
                raise SeriesError(f"exponent {e} is not a nonnegative multiple of {step}")
            out[(int(k),)] = v
        bound = self.prec / step  # exponents < bound are exact
        Tmax = -(-bound.numerator // bound.denominator) - 1
        return MultiSeries(1, Tmax if T is None else min(T, Tmax), out)

    def __repr__(self) -> str:
        parts = [f"{v}*q^({e})" for e, v in self.terms().items()]
        return (" + ".join(parts) or "0") + f" + O(q^({self.prec}))"

    def to_text(self) -> str:
        lines = [f"# denominator={self.d} prec={self.prec}"]
        for e, v in self.terms().items():
            lines.append(f"{e} {v}")
        return "\n".join(lines) + "\n"


def from_power_series(f: MultiSeries, step=1) -> PuiseuxSeries:
    """Univariate ``f(s)`` with ``s = q^step`` as a Puiseux series in ``q``."""
    if f.nvars != 1:
        raise SeriesError("need a univariate series")
    step = _frac(step)
    return PuiseuxSeries.from_exponents({k[0] * step: v for k, v in f.c.items()}, (f.T + 1) * step)


# ---------------------------------------------------------------------------
# theta and eta


def theta(k: int, T) -> PuiseuxSeries:
    """Jacobi theta functions in the ``q^(n^2/2)`` normalization, exact through exponent ``T``.

    ``theta_2 = sum q^((n+1/2)^2/2)``, ``theta_3 = sum q^(n^2/2)``,
    ``theta_4 = sum (-1)^n q^(n^2/2)``.
    """
    T = _frac(T)
    terms: Dict[Fraction, int] = {}
    if k == 2:
        shift, d = Fraction(1, 2), 8
    elif k in (3, 4):
        shift, d = Fraction(0), 2
    else:
        raise ValueError("theta index must be 2, 3 or 4")
    n = 0
    while (Fraction(n) + shift) ** 2 / 2 <= T:
        for m in {n, -n - (1 if k == 2 else 0)} if k == 2 else {n, -n}:
            e = (Fraction(m) + shift) ** 2 / 2
            sign = (-1) ** m if k == 4 else 1
            terms[e] = terms.get(e, 0) + sign
        n += 1
    return PuiseuxSeries.from_exponents(terms, T + Fraction(1, d))


def eta(T) -> PuiseuxSeries:
    """``q^(1/24) prod_{n>=1} (1 - q^n)``, exact through exponent ``T``."""
    T = _frac(T)
    N = int(T) + 1
    # pentagonal number theorem is avoided on purpose: plain product expansion
    poly = {0: Fraction(1)}
    for n in range(1, N + 1):
        new = dict(poly)
        for k, v in poly.items():
            if k + n <= N:
                new[k + n] = new.get(k + n, 0) - v
        poly = {k: v for k, v in new.items() if v}
    body = PuiseuxSeries(1, poly, N + 1)
    return body.shift(Fraction(1, 24)).truncated(T + Fraction(1, 24))


def eta_scaled(r, T) -> PuiseuxSeries:
    """``eta(r t)`` as a series in ``q = exp(2 pi i t)``, exact through ``T``."""
    r = _frac(r)
    return eta(T / r).substitute_power(r)


def eta_quotient(powers: Dict, prec) -> PuiseuxSeries:
    """``prod eta(r t)^e`` for ``{r: e}``, exact for exponents ``< prec``."""
    prec = _frac(prec)
    work = prec + 1
    while True:
        out = None
        for r, e in sorted(powers.items()):
            f = eta_scaled(r, work) ** e
            out = f if out is None else out * f
        if out.prec >= prec:
            return out.truncated(prec)
        work += prec - out.prec + 1
