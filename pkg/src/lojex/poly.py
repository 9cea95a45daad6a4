"""Finitely supported polynomials in named variables over an exact field.

PolyN is the workhorse representative for elements of k[[x_1,...,x_n]] in
scope: sparse exponent-vector -> coefficient maps, immutable in practice, with
exact division, gcd (primitive PRS), squarefree decomposition, composition,
and the local-order utilities (min total degree, initial form).

Term order for printing and for single-divisor division is graded lex,
highest first.
"""

from .errors import ZeroInput, ArityMismatch, CharacteristicError
from .fields import FieldElement


def _grlex_key(exps):
    return (sum(exps), exps)


class PolyN:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, variables, terms):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "vars", tuple(variables))
        clean = {}
        for exps, c in terms.items():
            c = field.coerce(c)
            if c:
                clean[tuple(int(e) for e in exps)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("PolyN is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def constant(cls, field, variables, c):
        n = len(tuple(variables))
        return cls(field, variables, {(0,) * n: field.coerce(c)})

    @classmethod
    def variable(cls, field, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(field, variables, {exps: field.one()})

    @classmethod
    def monomial(cls, field, variables, exps, coeff=1):
        return cls(field, variables, {tuple(exps): field.coerce(coeff)})

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_unit_at_origin(self):
        n = len(self.vars)
        return bool(self.terms.get((0,) * n))

    def constant_term(self):
        n = len(self.vars)
        return self.terms.get((0,) * n, self.field.zero())

    def total_degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def min_total_degree(self):
        """Order at the origin as an int, or None for the zero polynomial."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def initial_form(self):
        """Lowest-degree nonzero homogeneous part."""
        if not self.terms:
            raise ZeroInput("initial form of the zero polynomial")
        d = self.min_total_degree()
        return PolyN(self.field, self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def degree_in(self, var):
        i = self.vars.index(var)
        if not self.terms:
            return None
        return max(e[i] for e in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, PolyN):
            if other.vars != self.vars:
                raise ArityMismatch(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, FieldElement)) or other.__class__.__name__ == "Fraction":
            return PolyN.constant(self.field, self.vars, other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return PolyN(self.field, self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyN(self.field, self.vars, {e: -c for e, c in self.terms.items()})

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
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = terms.get(e)
                s = c if s is None else s + c
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return PolyN(self.field, self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers take natural exponents")
        result = PolyN.constant(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, PolyN):
            return self.field == other.field and self.vars == other.vars and self.terms == other.terms
        if isinstance(other, int):
            return self == PolyN.constant(self.field, self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structural operations ----------------------------------------------

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def scale(self, c):
        c = self.field.coerce(c)
        return PolyN(self.field, self.vars, {e: v * c for e, v in self.terms.items()})

    def derivative(self, var):
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coeff = c * self.field.coerce(e[i])
            if coeff:
                new = list(e)
                new[i] -= 1
                terms[tuple(new)] = coeff
        return PolyN(self.field, self.vars, terms)

    def evaluate(self, point):
        if len(point) != len(self.vars):
            raise ArityMismatch("evaluation point arity mismatch")
        point = [self.field.coerce(x) for x in point]
        acc = self.field.zero()
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            acc = acc + term
        return acc

    def compose(self, subs):
        """Substitute polynomials for the variables: self(subs[0], ..., subs[n-1])."""
        if len(subs) != len(self.vars):
            raise ArityMismatch("composition arity mismatch")
        target_vars = subs[0].vars
        field = subs[0].field
        caches = [{0: PolyN.constant(field, target_vars, 1)} for _ in subs]

        def power(i, k):
            cache = caches[i]
            if k not in cache:
                half = power(i, k // 2)
                cache[k] = half * half * subs[i] if k % 2 else half * half
            return cache[k]

        acc = PolyN.zero(field, target_vars)
        for e, c in self.terms.items():
            term = PolyN.constant(field, target_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def rename(self, variables):
        return PolyN(self.field, variables, dict(self.terms))

    def exact_divide(self, divisor):
        """Quotient self/divisor when divisor divides exactly, else None."""
        if divisor.is_zero():
            raise ZeroInput("division by the zero polynomial")
        if self.is_zero():
            return self
        rem = self
        q_terms = {}
        de, dc = divisor.leading()
        inv = dc.inverse()
        while rem.terms:
            e, c = rem.leading()
            diff = tuple(a - b for a, b in zip(e, de))
            if any(d < 0 for d in diff):
                return None
            qc = c * inv
            q_terms[diff] = qc
            rem = rem - divisor * PolyN.monomial(self.field, self.vars, diff, qc)
        return PolyN(self.field, self.vars, q_terms)

    def divides(self, other):
        return other.exact_divide(self) is not None

    def multiplicity_of_factor(self, factor):
        """Largest k with factor^k dividing self (self nonzero, factor nonconstant)."""
        k = 0
        cur = self
        while True:
            nxt = cur.exact_divide(factor)
            if nxt is None:
                return k, cur
            k += 1
            cur = nxt

    def split_monomial_factor(self):
        """Factor out the largest monomial: returns (exponents, cofactor)."""
        if self.is_zero():
            raise ZeroInput("monomial factor of zero")
        n = len(self.vars)
        mins = tuple(min(e[i] for e in self.terms) for i in range(n))
        if not any(mins):
            return mins, self
        terms = {tuple(a - b for a, b in zip(e, mins)): c for e, c in self.terms.items()}
        return mins, PolyN(self.field, self.vars, terms)

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
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
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __str__ = __repr__


# ---------------------------------------------------------------------------
# gcd and squarefree machinery


def _main_var_index(f, g):
    for i in reversed(range(len(f.vars))):
        if any(e[i] for e in f.terms) or any(e[i] for e in g.terms):
            return i
    return None


def _to_recursive(f, i):
    """Represent f as {degree in var i: coefficient PolyN without var i's exponent}."""
    out = {}
    for e, c in f.terms.items():
        rest = e[:i] + (0,) + e[i + 1 :]
        d = e[i]
        cur = out.get(d)
        if cur is None:
            cur = {}
            out[d] = cur
        cur[rest] = c
    return {d: PolyN(f.field, f.vars, t) for d, t in out.items()}


def _from_recursive(field, variables, i, rec):
    terms = {}
    for d, coeff in rec.items():
        for e, c in coeff.terms.items():
            full = e[:i] + (d,) + e[i + 1 :]
            terms[full] = c
    return PolyN(field, variables, terms)


def _rec_degree(rec):
    return max(rec) if rec else None


def _rec_mul_xk(rec, k):
    return {d + k: c for d, c in rec.items()}


def _rec_scale(rec, poly):
    out = {}
    for d, c in rec.items():
        p = c * poly
        if not p.is_zero():
            out[d] = p
    return out


def _rec_sub(a, b):
    out = dict(a)
    for d, c in b.items():
        cur = out.get(d)
        cur = -c if cur is None else cur - c
        if cur.is_zero():
            out.pop(d, None)
        else:
            out[d] = cur
    return out


def _pseudo_rem(f_rec, g_rec):
    """Pseudo-remainder of f by g in (k[rest])[x_i]."""
    df, dg = _rec_degree(f_rec), _rec_degree(g_rec)
    lc_g = g_rec[dg]
    rem = dict(f_rec)
    while rem and _rec_degree(rem) >= dg:
        d = _rec_degree(rem)
        lc_r = rem[d]
        rem = _rec_sub(_rec_scale(rem, lc_g), _rec_mul_xk(_rec_scale(g_rec, lc_r), d - dg))
    return rem


def poly_gcd(f, g):
    """Monic-normalized gcd via content/primitive-part PRS (any variable count)."""
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return PolyN.constant(f.field, f.vars, 1)
    i = _main_var_index(f, g)
    fr, gr = _to_recursive(f, i), _to_recursive(g, i)
    if _rec_degree(fr) == 0 or _rec_degree(gr) == 0:
        # main variable absent from one of them: gcd of contents
        cf = _content(f, i)
        cg = _content(g, i)
        return _normalize(poly_gcd(cf, cg))
    cf, pf = _content_primitive(f, i)
    cg, pg = _content_primitive(g, i)
    cont = poly_gcd(cf, cg)
    a, b = _to_recursive(pf, i), _to_recursive(pg, i)
    if _rec_degree(a) < _rec_degree(b):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b)
        if not r:
            tail = _from_recursive(f.field, f.vars, i, b)
            break
        rp = _from_recursive(f.field, f.vars, i, r)
        _, rp = _content_primitive(rp, i)
        a, b = b, _to_recursive(rp, i)
    _, tail = _content_primitive(tail, i)
    return _normalize(cont * tail)


def _content(f, i):
    rec = _to_recursive(f, i)
    coeffs = list(rec.values())
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = poly_gcd(acc, c)
        if acc.is_constant():
            break
    return acc


def _content_primitive(f, i):
    cont = _content(f, i)
    if cont.is_constant():
        return PolyN.constant(f.field, f.vars, 1), _normalize_scale(f)
    prim = f.exact_divide(cont)
    return cont, prim


def _normalize_scale(f):
    return f


def _normalize(f):
    if f.is_zero():
        return f
    _, lc = f.leading()
    return f.scale(lc.inverse())


def squarefree_decomposition(f):
    """Multiplicity classes: returns [(g_k, k)] with f = unit * prod g_k^k.

    The g_k are squarefree and pairwise coprime.  Handles characteristic p by
    extracting p-th roots when every partial derivative vanishes (finite
    fields are perfect; over Q this cannot happen for nonconstant f).
    """
    if f.is_zero():
        raise ZeroInput("squarefree decomposition of zero")
    if f.is_constant():
        return []
    partials = [f.derivative(v) for v in f.vars]
    if all(p.is_zero() for p in partials):
        p = f.field.characteristic
        if not p:
            raise CharacteristicError("vanishing differential over characteristic 0")
        root = _pth_root(f, p)
        return [(g, k * p) for g, k in squarefree_decomposition(root)]
    c = f
    for p_ in partials:
        if not p_.is_zero():
            c = poly_gcd(c, p_)
        if c.is_constant():
            break
    result = []
    if c.is_constant():
        return [(_normalize(f), 1)]
    w = f.exact_divide(c)
    k = 1
    while not w.is_constant():
        y = poly_gcd(w, c)
        z = w.exact_divide(y)
        if not z.is_constant():
            result.append((_normalize(z), k))
        w = y
        nc = c.exact_divide(y)
        c = nc
        k += 1
    if not c.is_constant():
        p = f.field.characteristic
        if not p:
            raise CharacteristicError("leftover non-unit content over characteristic 0")
        for g, m in squarefree_decomposition(_pth_root(c, p)):
            result.append((g, m * p))
    return result


def _pth_root(f, p):
    size = f.field.size
    terms = {}
    for e, c in f.terms.items():
        if any(k % p for k in e):
            raise CharacteristicError("polynomial is not a p-th power")
        root_c = c if size == p else c ** (size // p)
        terms[tuple(k // p for k in e)] = root_c
    return PolyN(f.field, f.vars, terms)


def squarefree_part(f):
    parts = squarefree_decomposition(f)
    acc = PolyN.constant(f.field, f.vars, 1)
    for g, _ in parts:
        acc = acc * g
    return acc
