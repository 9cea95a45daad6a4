"""Exact coefficient arithmetic: rationals, prime fields, and extension towers.

A CoeffField owns its element representation and arithmetic; FieldElement is a
thin immutable wrapper delegating to the field.  Representations are canonical
(reduced Fraction over Q, residue in [0, p) over F_p, coefficient tuple of
degree < deg(minpoly) over an extension), so equality is representational
equality and elements are hashable.

The module also provides the univariate tooling the rest of the engine leans
on: polynomial lists over a field, deterministic Berlekamp factorization and
Rabin irreducibility over finite fields, rational root extraction over Q, and
exact square roots in quadratic towers.
"""

from fractions import Fraction
from math import isqrt

from .errors import (
    DivisionByZero,
    FieldMismatch,
    ReduciblePolynomial,
    RootSearchUnsupported,
)


class FieldElement:
    """Immutable element of a CoeffField with canonical payload."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self, other
            lifted = _lift(self, other)
            if lifted is not None:
                return lifted
            raise FieldMismatch(f"elements of {self.field} and {other.field}")
        if isinstance(other, (int, Fraction)):
            return self, self.field.coerce(other)
        return self, NotImplemented

    def __add__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field._add(a.payload, b.payload))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field._add(a.payload, a.field._neg(b.payload)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field._mul(a.payload, b.payload))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        if not b:
            raise DivisionByZero("division by zero field element")
        return FieldElement(a.field, a.field._mul(a.payload, a.field._inv(b.payload)))

    def __rtruediv__(self, other):
        return self.field.coerce(other).__truediv__(self)

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.payload))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self.field.one() / self) ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return self.field.one() / self

    def __bool__(self):
        return self.payload != self.field._zero_payload()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.payload == other.payload
            lifted = _lift(self, other)
            if lifted is None:
                return False
            a, b = lifted
            return a.payload == b.payload
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.field.coerce(other)
            except FieldMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.payload))

    def sort_key(self):
        return self.field._sort_key(self.payload)

    def __repr__(self):
        return self.field._format(self.payload)

    __str__ = __repr__


def _lift(a, b):
    """Lift a pair of elements into a common field along an extension tower."""
    fa, fb = a.field, b.field
    up = fb
    while isinstance(up, Extension):
        if up.base == fa:
            return up.embed(a), b
        up = up.base
    up = fa
    while isinstance(up, Extension):
        if up.base == fb:
            return a, up.embed(b)
        up = up.base
    return None


class CoeffField:
    """Base class; subclasses implement payload-level arithmetic."""

    characteristic = None
    size = None  # None means infinite

    def element(self, payload):
        return FieldElement(self, payload)

    def zero(self):
        return FieldElement(self, self._zero_payload())

    def one(self):
        return FieldElement(self, self._one_payload())

    def from_int(self, n):
        return self.coerce(n)

    def coerce(self, x):
        """Coerce an int, Fraction, or compatible FieldElement into this field."""
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            up = self
            while isinstance(up, Extension):
                if up.base == x.field:
                    e = x
                    chain = []
                    walk = self
                    while walk != x.field:
                        chain.append(walk)
                        walk = walk.base
                    for ext in reversed(chain):
                        e = ext.embed(e)
                    return e
                up = up.base
            raise FieldMismatch(f"cannot coerce element of {x.field} into {self}")
        return self._coerce_scalar(x)

    def elements(self):
        raise RootSearchUnsupported(f"{self} is not enumerable")


class Rationals(CoeffField):
    """The field Q with Fraction payloads."""

    characteristic = 0
    size = None

    def _zero_payload(self):
        return Fraction(0)

    def _one_payload(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return 1 / a

    def _coerce_scalar(self, x):
        if isinstance(x, (int, Fraction)):
            return FieldElement(self, Fraction(x))
        raise FieldMismatch(f"cannot coerce {x!r} into Q")

    def _sort_key(self, a):
        return (a.numerator, a.denominator)

    def _format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField(CoeffField):
    """F_p for a prime p; payloads are residues in [0, p)."""

    def __init__(self, p):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        return pow(a, self.p - 2, self.p)

    def _coerce_scalar(self, x):
        if isinstance(x, int):
            return FieldElement(self, x % self.p)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return FieldElement(self, x.numerator * pow(den, self.p - 2, self.p) % self.p)
        raise FieldMismatch(f"cannot coerce {x!r} into F_{self.p}")

    def elements(self):
        for i in range(self.p):
            yield FieldElement(self, i)

    def _sort_key(self, a):
        return a

    def _format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class Extension(CoeffField):
    """Simple extension base(gen) with gen a root of a monic irreducible minpoly.

    Payloads are tuples of base-field elements (c_0, ..., c_{d-1}) meaning
    c_0 + c_1*gen + ... + c_{d-1}*gen^(d-1).  Construct via adjoin_root, which
    performs the irreducibility check.
    """

    def __init__(self, base, minpoly, gen_name):
        self.base = base
        self.minpoly = tuple(minpoly)  # monic, coefficients in base, low degree first
        self.gen_name = gen_name
        self.degree = len(minpoly) - 1
        self.characteristic = base.characteristic
        self.size = None if base.size is None else base.size ** self.degree
        # - gen^d expressed in lower powers
        self._gen_power = tuple(-c for c in self.minpoly[:-1])

    def embed(self, x):
        x = self.base.coerce(x)
        pad = (self.base.zero(),) * (self.degree - 1)
        return FieldElement(self, (x,) + pad)

    def gen(self):
        zero, one = self.base.zero(), self.base.one()
        payload = tuple(one if i == 1 else zero for i in range(self.degree))
        return FieldElement(self, payload)

    def _zero_payload(self):
        return (self.base.zero(),) * self.degree

    def _one_payload(self):
        return (self.base.one(),) + (self.base.zero(),) * (self.degree - 1)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        d = self.degree
        zero = self.base.zero()
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = prod[i + j] + x * y
        # reduce powers >= d using gen^d = _gen_power
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if not c:
                continue
            prod[k] = zero
            for j, g in enumerate(self._gen_power):
                prod[k - d + j] = prod[k - d + j] + c * g
        return tuple(prod[:d])

    def _inv(self, a):
        # extended Euclid in base[Y] against the minpoly
        f = list(self.minpoly)
        g = _uv_trim(list(a))
        s0, s1 = [], [self.base.one()]
        r0, r1 = f, g
        while _uv_deg(r1) > 0:
            q, r = uv_divmod(self.base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, uv_sub(self.base, s0, uv_mul(self.base, q, s1))
        if _uv_deg(r1) < 0:
            raise DivisionByZero("inverse of zero divisor in extension")
        c = r1[0].inverse()
        inv = [c * s for s in s1]
        inv += [self.base.zero()] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    def _coerce_scalar(self, x):
        return self.embed(self.base.coerce(x))

    def elements(self):
        import itertools

        if self.size is None:
            raise RootSearchUnsupported(f"{self} is not enumerable")
        pools = [list(self.base.elements()) for _ in range(self.degree)]
        for combo in itertools.product(*pools):
            yield FieldElement(self, tuple(combo))

    def _sort_key(self, a):
        return tuple(c.sort_key() for c in a)

    def _format(self, a):
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(repr(c))
            else:
                g = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                cs = repr(c)
                parts.append(g if cs == "1" else f"-{g}" if cs == "-1" else f"{cs}*{g}")
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Extension)
            and other.base == self.base
            and other.minpoly == self.minpoly
            and other.gen_name == self.gen_name
        )

    def __hash__(self):
        return hash(("ext", self.base, self.minpoly, self.gen_name))

    def __repr__(self):
        return f"{self.base}({self.gen_name})"


QQ = Rationals()


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# univariate polynomials over a field: lists of FieldElement, low degree first


def _uv_trim(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _uv_deg(cs):
    return len(cs) - 1


def uv_from(field, coeffs):
    """Build a coefficient list over `field`, coercing ints/Fractions."""
    return _uv_trim([field.coerce(c) for c in coeffs])


def uv_add(field, a, b):
    n = max(len(a), len(b))
    zero = field.zero()
    return _uv_trim(
        [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]
    )


def uv_sub(field, a, b):
    n = max(len(a), len(b))
    zero = field.zero()
    return _uv_trim(
        [(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)]
    )


def uv_scale(field, a, c):
    if not c:
        return []
    return [x * c for x in a]


def uv_mul(field, a, b):
    if not a or not b:
        return []
    zero = field.zero()
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _uv_trim(out)


def uv_divmod(field, a, b):
    if not b:
        raise DivisionByZero("univariate division by zero polynomial")
    a = list(a)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = b[-1].inverse()
    while True:
        _uv_trim(a)
        if not a or len(a) < len(b):
            break
        k = len(a) - len(b)
        c = a[-1] * inv_lead
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = a[k + i] - c * y
        a.pop()
    return _uv_trim(q), _uv_trim(a)


def uv_monic(field, a):
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def uv_gcd(field, a, b):
    a, b = _uv_trim(list(a)), _uv_trim(list(b))
    while b:
        _, r = uv_divmod(field, a, b)
        a, b = b, r
    return uv_monic(field, a)


def uv_eval(field, a, x):
    acc = field.zero()
    for c in reversed(a):
        acc = acc * x + c
    return acc


def uv_derivative(field, a):
    return _uv_trim([field.coerce(i) * a[i] for i in range(1, len(a))])


def uv_pow_mod(field, base, e, mod):
    if _uv_deg(mod) <= 0:
        return []
    result = [field.one()]
    _, base = uv_divmod(field, base, mod)
    while e:
        if e & 1:
            _, result = uv_divmod(field, uv_mul(field, result, base), mod)
        e >>= 1
        if e:
            _, base = uv_divmod(field, uv_mul(field, base, base), mod)
    return result


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rabin_irreducible(field, f):
    """Deterministic irreducibility test over a finite field.

    Returns (True, None) or (False, factor-or-None); a returned factor is a
    proper monic divisor when the test exhibits one.
    """
    q = field.size
    if q is None:
        raise RootSearchUnsupported("Rabin test needs a finite field")
    f = uv_monic(field, list(f))
    d = _uv_deg(f)
    if d <= 0:
        return False, None
    if d == 1:
        return True, None
    x = [field.zero(), field.one()]
    for ell in _prime_factors(d):
        h = uv_sub(field, uv_pow_mod(field, x, q ** (d // ell), f), x)
        g = uv_gcd(field, f, h)
        if _uv_deg(g) > 0:
            if _uv_deg(g) < d:
                return False, g
            return False, None
    h = uv_sub(field, uv_pow_mod(field, x, q ** d, f), x)
    if _uv_trim(list(h)):
        return False, None
    return True, None


def berlekamp_factor(field, f):
    """Full factorization of a squarefree-free univariate f over a finite field.

    Deterministic (no random splitting); returns a list of monic irreducible
    factors with multiplicity, plus the leading coefficient.
    """
    q = field.size
    if q is None:
        raise RootSearchUnsupported("Berlekamp needs a finite field")
    f = _uv_trim(list(f))
    lead = f[-1]
    f = uv_monic(field, f)
    factors = []
    _berlekamp_rec(field, f, factors)
    factors.sort(key=lambda g: (len(g), [c.sort_key() for c in g]))
    return factors, lead


def _berlekamp_rec(field, f, out):
    d = _uv_deg(f)
    if d <= 0:
        return
    if d == 1:
        out.append(f)
        return
    df = uv_derivative(field, f)
    if not df:
        # f = g(x^p): take the p-th root coefficientwise (finite field, perfect)
        p = field.characteristic
        root = _uv_trim([f[i] ** (field.size // p) for i in range(0, len(f), p)])
        sub = []
        _berlekamp_rec(field, root, sub)
        for g in sub:
            out.extend([g] * p)
        return
    g = uv_gcd(field, f, df)
    if _uv_deg(g) > 0:
        _berlekamp_rec(field, g, out)
        q2, _ = uv_divmod(field, f, g)
        _berlekamp_rec(field, q2, out)
        return
    # f squarefree: Berlekamp subalgebra
    q = field.size
    x = [field.zero(), field.one()]
    # columns of Q: x^(i*q) mod f
    xq = uv_pow_mod(field, x, q, f)
    power = [field.one()]
    cols = []
    for i in range(d):
        col = list(power) + [field.zero()] * (d - len(power))
        cols.append(col[:d])
        _, power = uv_divmod(field, uv_mul(field, power, xq), f)
        power = power if power else [field.zero()]
    # nullspace of (Q - I)^T acting on coefficient vectors v: v(x)^q = v(x) mod f
    n = d
    mat = [[cols[j][i] - (field.one() if i == j else field.zero()) for j in range(n)] for i in range(n)]
    basis = _nullspace(field, mat)
    r = len(basis)
    if r == 1:
        out.append(f)
        return
    # split with gcd(f, v - s) over s in the field; deterministic scan
    stack = [f]
    for v in basis:
        vpoly = _uv_trim([c for c in v])
        if _uv_deg(vpoly) < 1:
            continue
        new_stack = []
        for piece in stack:
            if _uv_deg(piece) <= 1:
                new_stack.append(piece)
                continue
            pieces = [piece]
            for s in field.elements():
                if len(pieces) >= _uv_deg(piece):
                    break
                next_pieces = []
                for h in pieces:
                    if _uv_deg(h) <= 1:
                        next_pieces.append(h)
                        continue
                    g2 = uv_gcd(field, h, uv_sub(field, vpoly, [s]))
                    if 0 < _uv_deg(g2) < _uv_deg(h):
                        q3, _ = uv_divmod(field, h, g2)
                        next_pieces.extend([g2, q3])
                    else:
                        next_pieces.append(h)
                pieces = next_pieces
            new_stack.extend(pieces)
        stack = new_stack
        if all(_uv_deg(h) == 1 for h in stack):
            break
    done = [h for h in stack if _uv_deg(h) >= 1]
    if len(done) == 1:
        out.append(done[0])
    else:
        for h in done:
            _berlekamp_rec(field, h, out)


def _nullspace(field, mat):
    """Nullspace basis of a square matrix over a field (row reduction)."""
    n = len(mat)
    m = [row[:] for row in mat]
    pivots = {}
    row = 0
    for col in range(n):
        sel = None
        for r in range(row, n):
            if m[r][col]:
                sel = r
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = m[row][col].inverse()
        m[row] = [c * inv for c in m[row]]
        for r in range(n):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots[col] = row
        row += 1
    basis = []
    zero, one = field.zero(), field.one()
    for col in range(n):
        if col in pivots:
            continue
        v = [zero] * n
        v[col] = one
        for pc, pr in pivots.items():
            v[pc] = -m[pr][col]
        basis.append(v)
    return basis


def roots_in_field(field, coeffs):
    """All roots of a nonzero univariate polynomial that lie in `field`.

    Returns a sorted list of (root, multiplicity).  Complete over finite
    fields (element scan) and over Q (rational root theorem); over infinite
    extensions only degrees <= 2 are decided (quadratic formula with exact
    square roots), higher degrees raise RootSearchUnsupported.
    """
    f = uv_from(field, coeffs)
    if not f:
        raise ValueError("roots_in_field needs a nonzero polynomial")
    if _uv_deg(f) == 0:
        return []
    roots = []
    if field.size is not None:
        if field.size > 200000:
            raise RootSearchUnsupported(f"field of size {field.size} too large to scan")
        for x in field.elements():
            if not uv_eval(field, f, x):
                roots.append(x)
    elif isinstance(field, Rationals):
        roots = _rational_roots(f)
    else:
        roots = _small_degree_roots(field, f)
    out = []
    seen = set()
    for r in roots:
        if r in seen:
            continue
        seen.add(r)
        mult = 0
        g = f
        while True:
            q, rem = uv_divmod(field, g, [-r, field.one()])
            if rem:
                break
            mult += 1
            g = q
        if mult:
            out.append((r, mult))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _rational_roots(f):
    lcm = 1
    for c in f:
        lcm = lcm * c.payload.denominator // _gcd_int(lcm, c.payload.denominator)
    ints = [int(c.payload * lcm) for c in f]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out x; root 0 handled below
    roots = []
    zero = QQ.zero()
    if not uv_eval(QQ, f, zero):
        roots.append(zero)
    if not ints:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for sign in (1, -1):
                cand = QQ.coerce(Fraction(sign * p, q))
                if cand not in roots and not uv_eval(QQ, f, cand):
                    roots.append(cand)
    return roots


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _small_degree_roots(field, f):
    d = _uv_deg(f)
    if d == 1:
        return [-f[0] / f[1]]
    if d == 2:
        a, b, c = f[2], f[1], f[0]
        if field.characteristic == 2:
            raise RootSearchUnsupported("quadratic formula unavailable in characteristic 2")
        disc = b * b - field.coerce(4) * a * c
        s = sqrt_in_field(disc)
        if s is None:
            return []
        two_a = (a + a).inverse()
        return [(-b + s) * two_a, (-b - s) * two_a]
    raise RootSearchUnsupported(
        f"complete root finding over {field} limited to degree <= 2 (got degree {d})"
    )


def sqrt_in_field(x):
    """Exact square root of x in its own field, or None if none exists there."""
    field = x.field
    if not x:
        return field.zero()
    if isinstance(field, Rationals):
        fr = x.payload
        if fr < 0:
            return None
        rn, rd = isqrt(fr.numerator), isqrt(fr.denominator)
        if rn * rn == fr.numerator and rd * rd == fr.denominator:
            return field.coerce(Fraction(rn, rd))
        return None
    if field.size is not None:
        if field.characteristic == 2:
            return x ** (field.size // 2) if field.size > 2 else x
        if field.size > 200000:
            raise RootSearchUnsupported("square-root scan too large")
        for cand in field.elements():
            if cand * cand == x:
                return cand
        return None
    # infinite extension: quadratic towers over Q
    if isinstance(field, Extension) and field.degree == 2:
        base = field.base
        bcoef, ccoef = field.minpoly[1], field.minpoly[0]  # gen^2 = -b*gen - c
        u, v = x.payload[0], x.payload[1]
        if not v:
            s = sqrt_in_field(u)
            if s is not None:
                return field.embed(s)
            # sqrt of a base scalar may still live upstairs: s = t*gen + r with r = -b*t/2
            if base.characteristic == 2:
                return None
            lead = bcoef * bcoef / base.coerce(4) - ccoef  # (gen + b/2)^2 value
            if not lead:
                return None
            w = u / lead
            t = sqrt_in_field(w)
            if t is None:
                return None
            r = -bcoef * t / base.coerce(2)
            return FieldElement(field, (r, t))
        if base.characteristic == 2:
            return None
        # solve (s + t*gen)^2 = u + v*gen with t != 0
        A = bcoef * bcoef - base.coerce(4) * ccoef
        B = base.coerce(2) * bcoef * v - base.coerce(4) * u
        C = v * v
        for w in _quadratic_roots_base(base, A, B, C):
            if not w:
                continue
            t = sqrt_in_field(w)
            if t is None:
                continue
            s = (v + bcoef * w) / (base.coerce(2) * t)
            cand = FieldElement(field, (s, t))
            if cand * cand == x:
                return cand
        return None
    raise RootSearchUnsupported(f"square roots over {field} unsupported")


def _quadratic_roots_base(base, A, B, C):
    if not A:
        if not B:
            return []
        return [-C / B]
    disc = B * B - base.coerce(4) * A * C
    s = sqrt_in_field(disc)
    if s is None:
        return []
    inv = (base.coerce(2) * A).inverse()
    return [(-B + s) * inv, (-B - s) * inv]


def adjoin_root(field, minpoly, gen_name):
    """Extend `field` by a root of a monic irreducible univariate minpoly.

    Over finite fields irreducibility is decided exactly (Rabin); over Q the
    check is the rational-root test, conclusive through degree 3 (the engine's
    documented desk-scale limit for higher degrees).  Raises
    ReduciblePolynomial with a witness factor whenever one is exhibited.
    """
    f = uv_from(field, minpoly)
    d = _uv_deg(f)
    if d < 2:
        raise ValueError("adjoin_root needs a minpoly of degree >= 2")
    if f[-1] != field.one():
        raise ValueError("minpoly must be monic")
    if field.size is not None:
        ok, factor = rabin_irreducible(field, f)
        if not ok:
            if factor is None:
                factors, _ = berlekamp_factor(field, f)
                factor = factors[0]
            raise ReduciblePolynomial(
                f"minpoly splits over {field}: factor {factor}", factor=factor
            )
    else:
        try:
            roots = roots_in_field(field, f)
        except RootSearchUnsupported:
            # degree > 2 over an infinite tower: only this partial probe exists
            roots = []
        if roots:
            r = roots[0][0]
            raise ReduciblePolynomial(
                f"minpoly has the root {r} in {field}", factor=[-r, field.one()]
            )
        # over Q the rational-root test is conclusive through degree 3 only
    return Extension(field, tuple(f), gen_name)


def kth_root(x, k):
    """Some lam in the field with lam^k = x, or None (deterministic choice)."""
    field = x.field
    if k == 1 or not x:
        return x
    if isinstance(field, Rationals):
        fr = x.payload
        cand = Fraction(_int_kth_root(abs(fr.numerator), k), _int_kth_root(fr.denominator, k))
        for sign in (1, -1):
            val = QQ.coerce(cand * sign)
            if val ** k == x:
                return val
        return None
    if field.size is not None:
        qm1 = field.size - 1
        if _gcd_int(k, qm1) == 1:
            return x ** pow(k, -1, qm1)
        if field.size > 200000:
            raise RootSearchUnsupported("k-th root scan too large")
        for cand in field.elements():
            if cand ** k == x:
                return cand
        return None
    if x == field.one():
        return field.one()
    if k % 2 == 1 and x == -field.one():
        return -field.one()
    return None


def _int_kth_root(n, k):
    if n == 0:
        return 0
    lo, hi = 0, max(2, int(round(n ** (1.0 / k))) + 2)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def field_from_spec(spec):
    """Parse a CLI field spec: `q`, `fp:<prime>`, `ext:<base>:<minpoly>`.

    The minpoly is written in the expression grammar with a single variable,
    whose name becomes the generator name (e.g. `ext:q:i^2+1`).
    """
    spec = spec.strip()
    if spec == "q":
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    if spec.startswith("ext:"):
        base_spec, minpoly_text = spec[4:].rsplit(":", 1)
        base = field_from_spec(base_spec)
        from .cli import parse_univariate  # deferred; cli owns the grammar

        name, coeffs = parse_univariate(minpoly_text, base)
        return adjoin_root(base, coeffs, name)
    raise ValueError(f"unknown field spec {spec!r}")
