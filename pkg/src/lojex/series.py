"""Univariate truncated power series, orders, and the substitution map.

Series1 tracks a certified precision: `precision=None` means the series is a
polynomial known in full, `precision=N` certifies every coefficient below
exponent N (and stores nothing at or above N).  All arithmetic propagates the
conservative precision min(N_a, N_b), so a stored coefficient is always a true
coefficient and an empty support below N means order >= N, never order = N.

Orders are three-valued (Finite / AtLeast / Infinity): a truncated series can
certify a finite order or a lower bound, and only a certificate (polynomial
input, a tagged branch divisor, or a construction-time vanishing certificate)
can certify Infinity.
"""

from .errors import (
    ArityMismatch,
    UndeterminedOrder,
    ZeroInput,
)
from .poly import PolyN

PRECISION_CAP = 4096
DEFAULT_PRECISION = 64


class OrderValue:
    """Finite(k) | AtLeast(N) | Infinity."""

    __slots__ = ("kind", "value")

    def __init__(self, kind, value=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("OrderValue is immutable")

    @classmethod
    def finite(cls, k):
        return cls("finite", int(k))

    @classmethod
    def at_least(cls, n):
        return cls("at_least", int(n))

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def is_infinite(self):
        return self.kind == "infinity"

    def __eq__(self, other):
        if isinstance(other, OrderValue):
            return self.kind == other.kind and self.value == other.value
        if isinstance(other, int):
            return self.kind == "finite" and self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.value))

    def _cmp_key(self, other):
        # comparisons are defined unless an AtLeast bound leaves them open
        if self.kind == "at_least" or other.kind == "at_least":
            a_lo = self.value if self.kind != "infinity" else None
            b_lo = other.value if other.kind != "infinity" else None
            if self.kind == "finite" and other.kind == "at_least" and self.value < other.value:
                return -1
            if other.kind == "finite" and self.kind == "at_least" and other.value < self.value:
                return 1
            raise UndeterminedOrder(
                f"comparison of {self} and {other} is not determined", max(x for x in (a_lo, b_lo) if x is not None)
            )
        if self.kind == "infinity":
            return 0 if other.kind == "infinity" else 1
        if other.kind == "infinity":
            return -1
        return (self.value > other.value) - (self.value < other.value)

    def __lt__(self, other):
        if isinstance(other, int):
            other = OrderValue.finite(other)
        return self._cmp_key(other) < 0

    def __le__(self, other):
        if isinstance(other, int):
            other = OrderValue.finite(other)
        return self._cmp_key(other) <= 0

    def __gt__(self, other):
        if isinstance(other, int):
            other = OrderValue.finite(other)
        return self._cmp_key(other) > 0

    def __ge__(self, other):
        if isinstance(other, int):
            other = OrderValue.finite(other)
        return self._cmp_key(other) >= 0

    def __add__(self, other):
        if isinstance(other, int):
            other = OrderValue.finite(other)
        if self.kind == "infinity" or other.kind == "infinity":
            return INFINITY
        if self.kind == "finite" and other.kind == "finite":
            return OrderValue.finite(self.value + other.value)
        return OrderValue.at_least(self.value + other.value)

    def __repr__(self):
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "at_least":
            return f">={self.value}"
        return "infinity"


INFINITY = OrderValue("infinity")


def _min_precision(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Series1:
    __slots__ = ("field", "var", "terms", "precision")

    def __init__(self, field, terms, precision=None, var="t"):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "var", var)
        clean = {}
        for k, c in terms.items():
            if precision is not None and k >= precision:
                continue
            c = field.coerce(c)
            if c:
                clean[int(k)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, *_):
        raise AttributeError("Series1 is immutable")

    @classmethod
    def zero(cls, field, precision=None, var="t"):
        return cls(field, {}, precision, var)

    @classmethod
    def monomial(cls, field, k, coeff=1, precision=None, var="t"):
        return cls(field, {k: coeff}, precision, var)

    @property
    def is_exact(self):
        return self.precision is None

    def order(self):
        if self.terms:
            return OrderValue.finite(min(self.terms))
        if self.precision is None:
            return INFINITY
        return OrderValue.at_least(self.precision)

    def truncate(self, precision):
        return Series1(self.field, self.terms, _min_precision(self.precision, precision), self.var)

    def coefficient(self, k):
        if self.precision is not None and k >= self.precision:
            raise UndeterminedOrder(f"coefficient {k} beyond precision", self.precision)
        return self.terms.get(k, self.field.zero())

    def _coerce_other(self, other):
        if isinstance(other, Series1):
            return other
        if isinstance(other, int) or other.__class__.__name__ in ("Fraction", "FieldElement"):
            return Series1(self.field, {0: other}, None, self.var)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        prec = _min_precision(self.precision, other.precision)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return Series1(self.field, terms, prec, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Series1(self.field, {k: -c for k, c in self.terms.items()}, self.precision, self.var)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        prec = _min_precision(self.precision, other.precision)
        terms = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if prec is not None and k >= prec:
                    continue
                c = a * b
                s = terms.get(k)
                s = c if s is None else s + c
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return Series1(self.field, terms, prec, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers take natural exponents")
        if n == 0:
            return Series1(self.field, {0: 1}, None, self.var)
        base = self
        result = Series1(self.field, {0: 1}, self.precision, self.var)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self, precision):
        """Multiplicative inverse to the given precision (unit constant term)."""
        a0 = self.terms.get(0)
        if not a0:
            raise ZeroInput("series inverse needs a unit constant term")
        inv0 = a0.inverse()
        out = {0: inv0}
        for n in range(1, precision):
            if self.precision is not None and n >= self.precision:
                break
            acc = self.field.zero()
            for k, c in self.terms.items():
                if 0 < k <= n and (n - k) in out:
                    acc = acc + c * out[n - k]
            val = -inv0 * acc
            if val:
                out[n] = val
        prec = _min_precision(self.precision, precision)
        return Series1(self.field, out, precision if prec is None else prec, self.var)

    def __eq__(self, other):
        if isinstance(other, Series1):
            return (
                self.field == other.field
                and self.var == other.var
                and self.terms == other.terms
                and self.precision == other.precision
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.var, frozenset(self.terms.items()), self.precision))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = repr(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]) or " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        if not parts:
            out = "0"
        else:
            out = parts[0]
            for p in parts[1:]:
                out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        if self.precision is not None:
            out += f" + O({self.var}^{self.precision})"
        return out

    __str__ = __repr__


class Param:
    """A parametrization: a nonzero pair of series vanishing at 0.

    `branch_of` optionally tags the irreducible curve this parametrizes; a
    construction-time certificate (kept private) may provide an exact
    vanishing test even without a tag.  `ord` is the min of component orders
    and is always finite.
    """

    __slots__ = ("components", "ord", "branch_of", "_certificate", "_extender")

    def __init__(self, components, branch_of=None, certificate=None, extender=None):
        components = tuple(components)
        if len(components) != 2:
            raise ArityMismatch("a parametrization has exactly two components")
        if not any(c.terms for c in components):
            raise ZeroInput("the zero pair is not a parametrization")
        orders = []
        for c in components:
            o = c.order()
            if o.kind == "finite":
                if o.value < 1:
                    raise ZeroInput("parametrization components must vanish at 0")
                orders.append(o.value)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "ord", min(orders))
        object.__setattr__(self, "branch_of", branch_of)
        object.__setattr__(self, "_certificate", certificate)
        object.__setattr__(self, "_extender", extender)

    def __setattr__(self, *_):
        raise AttributeError("Param is immutable")

    @property
    def field(self):
        return self.components[0].field

    @property
    def is_exact(self):
        return all(c.is_exact for c in self.components)

    @property
    def precision(self):
        precs = [c.precision for c in self.components if c.precision is not None]
        return min(precs) if precs else None

    def extend(self, precision):
        if self.is_exact or (self.precision is not None and self.precision >= precision):
            return self
        if self._extender is None:
            return self
        comps = self._extender(precision)
        return Param(comps, self.branch_of, self._certificate, self._extender)

    def scaled(self, lam):
        """Reparametrize t -> lam*t (lam a nonzero field element)."""
        comps = []
        for c in self.components:
            comps.append(
                Series1(c.field, {k: v * lam ** k for k, v in c.terms.items()}, c.precision, c.var)
            )
        return Param(comps, self.branch_of, self._certificate, None if self._extender is None else (lambda p, s=self, l=lam: s.extend(p).scaled(l).components))

    def __eq__(self, other):
        if isinstance(other, Param):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"({self.components[0]}, {self.components[1]})"


def order(x):
    """The order (least exponent / total degree), as an OrderValue."""
    if isinstance(x, PolyN):
        d = x.min_total_degree()
        return INFINITY if d is None else OrderValue.finite(d)
    if isinstance(x, Series1):
        return x.order()
    raise TypeError(f"order of {type(x).__name__}")


def initial_form(f):
    return f.initial_form()


def substitute(f, phi):
    """The substitution homomorphism: f(phi_1, ..., phi_n) as a Series1.

    Components must have positive order; the result is exact when all
    components are exact, else carries the conservative precision
    min_j(precision_j).
    """
    comps = phi.components if isinstance(phi, Param) else tuple(phi)
    if len(comps) != len(f.vars):
        raise ArityMismatch(f"{len(f.vars)} variables but {len(comps)} components")
    field = comps[0].field
    for c in comps:
        o = c.order()
        if o.kind == "finite" and o.value < 1:
            raise ZeroInput("substitution components must have positive order")
    prec = None
    for c in comps:
        prec = _min_precision(prec, c.precision)
    var = comps[0].var
    caches = [{1: c} for c in comps]

    def power(i, k):
        cache = caches[i]
        if k == 0:
            return Series1(field, {0: 1}, None, var)
        if k not in cache:
            half = power(i, k // 2)
            cache[k] = half * half * comps[i] if k % 2 else half * half
        return cache[k]

    acc = Series1(field, {}, prec, var)
    for e, c in f.terms.items():
        term = Series1(field, {0: c}, None, var)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        acc = acc + term
    return acc


def ord_pullback(f, phi, cap=PRECISION_CAP):
    """ord of f along phi, with certificates for Infinity and adaptive precision.

    Infinity is only ever certified (tagged branch divisor, exact polynomial
    substitution, or a construction certificate); a truncated series with no
    visible term keeps doubling the precision up to `cap` before raising
    UndeterminedOrder.
    """
    if not isinstance(phi, Param):
        phi = Param(tuple(phi))
    if f.is_zero():
        return INFINITY
    if phi.branch_of is not None and phi.branch_of.divides(f):
        return INFINITY
    if phi.is_exact:
        return substitute(f, phi).order()
    cert = phi._certificate
    if cert is not None and cert.pullback_is_zero(f):
        return INFINITY
    current = phi
    while True:
        o = substitute(f, current).order()
        if o.kind == "finite":
            return o
        prec = current.precision or DEFAULT_PRECISION
        if prec >= cap:
            raise UndeterminedOrder(
                f"order of pullback still above {prec} with no certificate", prec
            )
        extended = current.extend(min(2 * prec, cap))
        if extended.precision == current.precision and not extended.is_exact:
            raise UndeterminedOrder(
                f"pullback order hidden beyond fixed precision {prec}", prec
            )
        current = extended


def ord_ideal_pullback(gens, phi, cap=PRECISION_CAP):
    """min over generators of ord_pullback (the order of the pulled-back ideal)."""
    gens = list(gens)
    if not gens:
        raise ZeroInput("ord_ideal_pullback needs at least one generator")
    best = INFINITY
    for g in gens:
        o = ord_pullback(g, phi, cap)
        if o.kind == "finite" and (best.is_infinite or o.value < best.value):
            best = o
    return best
