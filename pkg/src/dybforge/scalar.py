"""Exact arithmetic in the rational-function field Q(q)(m1..m9).

A Scalar is a quotient num/den of sparse multivariate polynomials over Q in
the deformation variable ``q`` and up to nine dynamical coordinates
``m1 .. m9``.  Polynomials are dicts mapping exponent tuples to rational
coefficients:

    Poly = dict[Monomial, coeff]     Monomial = (e_q, e_m1, ..., e_m9)

The zero polynomial is the empty dict.  Scalars are kept canonical at all
times: gcd(num, den) = 1 and the leading coefficient of den (under graded
lex with q < m1 < ... < m9) is 1, so equality is plain structural equality.

Dynamical-parameter shifts act multiplicatively: shift(f, w) substitutes
mi -> q^(w_i) * mi for every coordinate.  Additive shifts of the underlying
parameter lambda_i (with m_i standing for q^lambda_i) therefore stay inside
the field, and shift is a field automorphism.
"""

from __future__ import annotations

from fractions import Fraction

try:  # gmpy2.mpq is drop-in compatible and much faster on large operands
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

NVARS = 10  # slot 0 is q, slots 1..9 are m1..m9
_ZERO_MON = (0,) * NVARS

Monomial = tuple
Poly = dict

# Weight vectors are plain int tuples, one entry per dynamical coordinate;
# shorter tuples act as if padded with zeros.
WeightVector = tuple


class ScalarError(Exception):
    pass


class ScalarDivisionError(ScalarError):
    """Division by the zero Scalar; carries the offending expression text."""

    def __init__(self, expr_text):
        super().__init__(f"division by zero: {expr_text}")
        self.expr_text = expr_text


class ScalarParseError(ScalarError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def weight_add(a, b):
    la, lb = len(a), len(b)
    if la < lb:
        a = a + (0,) * (lb - la)
    elif lb < la:
        b = b + (0,) * (la - lb)
    return tuple(x + y for x, y in zip(a, b))


def weight_neg(a):
    return tuple(-x for x in a)


def weight_zero(r=1):
    return (0,) * r


# --------------------------------------------------------------------------
# raw polynomial arithmetic
# --------------------------------------------------------------------------

def _padd(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mon, c in b.items():
        s = out.get(mon)
        if s is None:
            out[mon] = c
        else:
            s = s + c
            if s:
                out[mon] = s
            else:
                del out[mon]
    return out


def _pneg(a):
    return {mon: -c for mon, c in a.items()}


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mon = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(mon)
            if s is None:
                out[mon] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[mon] = s
                else:
                    del out[mon]
    return out


def _ppow(a, n):
    out = {_ZERO_MON: _Q(1)}
    base = a
    while n:
        if n & 1:
            out = _pmul(out, base)
        base = _pmul(base, base)
        n >>= 1
    return out


def _pconst(c):
    c = _Q(c)
    return {_ZERO_MON: c} if c else {}


def _pvar(slot, exp=1):
    mon = [0] * NVARS
    mon[slot] = exp
    return {tuple(mon): _Q(1)}


def _mon_key(mon):
    # graded lex, q before m1 before ... before m9
    return (sum(mon), mon)


def _plead(a):
    """(monomial, coeff) of the leading term under graded lex."""
    mon = max(a, key=_mon_key)
    return mon, a[mon]


def _pvars(a):
    used = [False] * NVARS
    for mon in a:
        for i, e in enumerate(mon):
            if e:
                used[i] = True
    return [i for i, u in enumerate(used) if u]


def _pdeg_in(a, v):
    return max((mon[v] for mon in a), default=-1)


def _is_const_poly(a):
    return len(a) == 1 and _ZERO_MON in a


# --------------------------------------------------------------------------
# gcd machinery: monomial content + univariate Euclid + subresultant PRS
# --------------------------------------------------------------------------

def _common_monomial(a):
    mins = None
    for mon in a:
        if mins is None:
            mins = list(mon)
        else:
            for i, e in enumerate(mon):
                if e < mins[i]:
                    mins[i] = e
    return tuple(mins) if mins else _ZERO_MON


def _mul_monomial(a, mon, sign):
    """Multiply (sign=+1) or divide (sign=-1) by a plain monomial."""
    if mon == _ZERO_MON:
        return dict(a)
    return {tuple(e + sign * m for e, m in zip(k, mon)): c for k, c in a.items()}


def _to_univariate(a, v):
    """dict main-degree -> coefficient poly (main variable zeroed out)."""
    out = {}
    for mon, c in a.items():
        d = mon[v]
        rest = list(mon)
        rest[v] = 0
        rest = tuple(rest)
        coef = out.setdefault(d, {})
        s = coef.get(rest)
        if s is None:
            coef[rest] = c
        else:
            s = s + c
            if s:
                coef[rest] = s
            else:
                del coef[rest]
    return {d: c for d, c in out.items() if c}


def _from_univariate(u, v):
    out = {}
    for d, coef in u.items():
        for mon, c in coef.items():
            m = list(mon)
            m[v] = d
            out[tuple(m)] = c
    return out


def _uni_gcd_1var(a, b, v):
    """Euclid for polynomials in the single variable v over Q (monic result)."""
    fa = {}
    for mon, c in a.items():
        fa[mon[v]] = fa.get(mon[v], _Q(0)) + c
    fb = {}
    for mon, c in b.items():
        fb[mon[v]] = fb.get(mon[v], _Q(0)) + c
    fa = {d: c for d, c in fa.items() if c}
    fb = {d: c for d, c in fb.items() if c}
    while fb:
        da, db = max(fa), max(fb)
        if da < db:
            fa, fb = fb, fa
            continue
        while fa and max(fa) >= db:
            da = max(fa)
            q = fa[da] / fb[db]
            for d, c in fb.items():
                t = d + da - db
                s = fa.get(t, _Q(0)) - q * c
                if s:
                    fa[t] = s
                elif t in fa:
                    del fa[t]
        fa, fb = fb, fa
    lc = fa[max(fa)]
    out = {}
    for d, c in fa.items():
        mon = [0] * NVARS
        mon[v] = d
        out[tuple(mon)] = c / lc
    return out


def _pdivexact(a, b):
    """Exact division a / b; raises if not exact (internal invariant)."""
    if not a:
        return {}
    if len(b) == 1:
        (mon_b, c_b), = b.items()
        return {tuple(x - y for x, y in zip(mon, mon_b)): c / c_b for mon, c in a.items()}
    rem = dict(a)
    mon_b, c_b = _plead(b)
    out = {}
    while rem:
        mon_r, c_r = _plead(rem)
        qmon = tuple(x - y for x, y in zip(mon_r, mon_b))
        if any(e < 0 for e in qmon):
            raise ArithmeticError("inexact polynomial division")
        qc = c_r / c_b
        out[qmon] = out.get(qmon, _Q(0)) + qc
        for mon, c in b.items():
            t = tuple(x + y for x, y in zip(qmon, mon))
            s = rem.get(t, _Q(0)) - qc * c
            if s:
                rem[t] = s
            elif t in rem:
                del rem[t]
    return {m: c for m, c in out.items() if c}


def _uni_prem(A, B, v):
    """Pseudo-remainder lc(B)^(degA-degB+1) * A  mod B (univariate in v)."""
    dA, dB = max(A), max(B)
    lcB = B[dB]
    R = {d: dict(c) for d, c in A.items()}
    steps = 0
    while R and max(R) >= dB:
        dR = max(R)
        lcR = R[dR]
        newR = {}
        for d, c in R.items():
            if d == dR:
                continue
            newR[d] = _pmul(c, lcB)
        for d, c in B.items():
            if d == dB:
                continue
            t = d + dR - dB
            newR[t] = _psub(newR.get(t, {}), _pmul(c, lcR))
        R = {d: c for d, c in newR.items() if c}
        steps += 1
    # scale to the standard prem normalization
    for _ in range(dA - dB + 1 - steps):
        R = {d: _pmul(c, lcB) for d, c in R.items()}
    return R


def _uni_content(A):
    cont = {}
    for coef in A.values():
        cont = poly_gcd(cont, coef)
        if _is_const_poly(cont):
            break
    return cont


def _monic(a):
    if not a:
        return {}
    _, lc = _plead(a)
    if lc == 1:
        return dict(a)
    return {mon: c / lc for mon, c in a.items()}


_PROBE_PRIME = (1 << 61) - 1


def _eval_univariate_mod(a, v, point, p):
    """Image of a in GF(p)[v] after substituting random points elsewhere.

    Returns None when a coefficient denominator vanishes mod p.
    """
    out = {}
    for mon, c in a.items():
        den = int(c.denominator) % p
        if den == 0:
            return None
        val = int(c.numerator) % p * pow(den, p - 2, p) % p
        for slot, e in enumerate(mon):
            if e and slot != v:
                val = val * pow(point[slot], e, p) % p
        d = mon[v]
        out[d] = (out.get(d, 0) + val) % p
    return {d: c for d, c in out.items() if c}


def _uni_gcd_mod(fa, fb, p):
    while fb:
        da, db = max(fa), max(fb)
        if da < db:
            fa, fb = fb, fa
            continue
        inv = pow(fb[db], p - 2, p)
        while fa and max(fa) >= db:
            da = max(fa)
            factor = fa[da] * inv % p
            for d, c in fb.items():
                t = d + da - db
                s = (fa.get(t, 0) - factor * c) % p
                if s:
                    fa[t] = s
                elif t in fa:
                    del fa[t]
        fa, fb = fb, fa
    return max(fa) if fa else 0


def _probe_gcd_degree(a, b, v, rng_state=[12345]):
    """Sound upper bound for deg_v(gcd(a, b)), or None if probing degenerated."""
    p = _PROBE_PRIME
    da, db = _pdeg_in(a, v), _pdeg_in(b, v)
    for _ in range(4):
        rng_state[0] = rng_state[0] * 6364136223846793005 + 1442695040888963407 & (1 << 64) - 1
        seed = rng_state[0]
        point = [(seed >> (5 * i)) % (p - 3) + 2 for i in range(NVARS)]
        fa = _eval_univariate_mod(a, v, point, p)
        fb = _eval_univariate_mod(b, v, point, p)
        if fa is None or fb is None:
            continue
        if max(fa, default=-1) != da or max(fb, default=-1) != db:
            continue  # leading coefficient vanished; bound not valid
        return _uni_gcd_mod(fa, fb, p)
    return None


def poly_gcd(a, b):
    """gcd in Q[q, m1..m9], normalized with leading coefficient 1."""
    if not a:
        return _monic(b)
    if not b:
        return _monic(a)
    ca, cb = _common_monomial(a), _common_monomial(b)
    cg = tuple(min(x, y) for x, y in zip(ca, cb))
    a = _mul_monomial(a, ca, -1)
    b = _mul_monomial(b, cb, -1)
    g = _gcd_stripped(a, b)
    return _monic(_mul_monomial(g, cg, +1))


def _univariate_content_in(a, v):
    """gcd over Q[v] of the coefficients of a grouped by the other exponents."""
    groups = {}
    for mon, c in a.items():
        rest = mon[:v] + (0,) + mon[v + 1:]
        groups.setdefault(rest, {})[mon[v]] = c
    g = {}
    for coef in groups.values():
        poly = {}
        for d, c in coef.items():
            mon = [0] * NVARS
            mon[v] = d
            poly[tuple(mon)] = c
        g = poly_gcd(g, poly) if g else _monic(poly)
        if _is_const_poly(g):
            break
    return g


def _gcd_stripped(a, b):
    if len(a) == 1 or len(b) == 1:
        return _pconst(1)
    if a == b:
        return _monic(a)
    va, vb = _pvars(a), _pvars(b)
    shared = [v for v in va if v in vb]
    if not shared:
        return _pconst(1)
    if len(va) == 1 and len(vb) == 1:
        return _uni_gcd_1var(a, b, shared[0])
    # modular probe: bound the gcd degree in each shared variable
    bounds = {v: _probe_gcd_degree(a, b, v) for v in shared}
    positive = [v for v, d in bounds.items() if d is None or d > 0]
    if not positive:
        return _pconst(1)
    if len(positive) == 1 and bounds[positive[0]] is not None:
        # gcd involves a single variable: it divides both univariate contents
        v = positive[0]
        g = poly_gcd(_univariate_content_in(a, v), _univariate_content_in(b, v))
        return g
    v = min(positive, key=lambda w: min(_pdeg_in(a, w), _pdeg_in(b, w)))
    A, B = _to_univariate(a, v), _to_univariate(b, v)
    if max(A) < max(B):
        A, B = B, A
    contA, contB = _uni_content(A), _uni_content(B)
    A = {d: _pdivexact(c, contA) for d, c in A.items()}
    B = {d: _pdivexact(c, contB) for d, c in B.items()}
    cont = poly_gcd(contA, contB)
    g, h = _pconst(1), _pconst(1)
    while True:
        dA, dB = max(A), max(B)
        if dB == 0:
            return _monic(cont)
        delta = dA - dB
        R = _uni_prem(A, B, v)
        if not R:
            break
        denom = _pmul(g, _ppow(h, delta))
        A = B
        B = {d: _pdivexact(c, denom) for d, c in R.items()}
        g = A[max(A)]
        if delta == 1:
            h = dict(g)
        elif delta > 1:
            h = _pdivexact(_ppow(g, delta), _ppow(h, delta - 1))
    contG = _uni_content(B)
    prim = {d: _pdivexact(c, contG) for d, c in B.items()}
    return _monic(_pmul(_from_univariate(prim, v), cont))


# --------------------------------------------------------------------------
# Scalar: canonical fraction of polynomials
# --------------------------------------------------------------------------

class Scalar:
    """Element of Q(q)(m1..m9) in canonical reduced form. Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _canonical=False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n):
        return Scalar(_pconst(n), _pconst(1), _canonical=True)

    @staticmethod
    def from_fraction(c):
        return Scalar(_pconst(_Q(c)), _pconst(1), _canonical=True)

    @staticmethod
    def q(exp=1):
        if exp >= 0:
            return Scalar(_pvar(0, exp), _pconst(1), _canonical=True)
        return Scalar(_pconst(1), _pvar(0, -exp), _canonical=True)

    @staticmethod
    def m(i, exp=1):
        if not 1 <= i <= 9:
            raise ScalarError(f"dynamical coordinate index out of range: {i}")
        if exp >= 0:
            return Scalar(_pvar(i, exp), _pconst(1), _canonical=True)
        return Scalar(_pconst(1), _pvar(i, -exp), _canonical=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == self.den

    def is_constant(self):
        """True when no dynamical coordinate occurs (q alone counts as constant)."""
        for mon in self.num:
            if any(mon[1:]):
                return False
        for mon in self.den:
            if any(mon[1:]):
                return False
        return True

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        # Henrici: with canonical inputs the result needs at most a gcd
        # against g = gcd of the denominators, never against full products.
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        b, d = self.den, other.den
        if b == d:
            num = _padd(self.num, other.num)
            if not num:
                return ZERO
            h = poly_gcd(num, b)
            if not _is_one_poly(h):
                return Scalar(_pdivexact(num, h), _pdivexact(b, h), _canonical=True)
            return Scalar(num, b, _canonical=True)
        g = poly_gcd(b, d)
        if _is_one_poly(g):
            num = _padd(_pmul(self.num, d), _pmul(other.num, b))
            if not num:
                return ZERO
            return Scalar(num, _pmul(b, d), _canonical=True)
        b1, d1 = _pdivexact(b, g), _pdivexact(d, g)
        num = _padd(_pmul(self.num, d1), _pmul(other.num, b1))
        if not num:
            return ZERO
        h = poly_gcd(num, g)
        if not _is_one_poly(h):
            num = _pdivexact(num, h)
            g = _pdivexact(g, h)
        den = _pmul(_pmul(b1, d1), g)
        return Scalar(*_monic_pair(num, den), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = poly_gcd(a, d)
        if not _is_one_poly(g1):
            a, d = _pdivexact(a, g1), _pdivexact(d, g1)
        g2 = poly_gcd(c, b)
        if not _is_one_poly(g2):
            c, b = _pdivexact(c, g2), _pdivexact(b, g2)
        return Scalar(*_monic_pair(_pmul(a, c), _pmul(b, d)), _canonical=True)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ScalarDivisionError(format_scalar(self))
        return Scalar(*_monic_pair(self.den, self.num), _canonical=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ScalarDivisionError(format_scalar(other))
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- shift endomorphisms -----------------------------------------------

    def shift(self, weights):
        """Substitute mi -> q^(w_i) mi; weights is an int tuple over m1, m2, ..."""
        if not any(weights):
            return self
        num, rn = _shift_poly(self.num, weights)
        den, rd = _shift_poly(self.den, weights)
        # both sides were multiplied by q^(-rn) resp. q^(-rd); rebalance
        if rn < rd:
            den = _mul_monomial(den, _qmon(rd - rn), +1)
        elif rd < rn:
            num = _mul_monomial(num, _qmon(rn - rd), +1)
        # shift is a field automorphism, so gcd(num, den) = 1 is preserved;
        # only the common q power and the monic normalization need care
        cq = min(min((m[0] for m in num), default=0), min((m[0] for m in den), default=0))
        if cq:
            num = _mul_monomial(num, _qmon(cq), -1)
            den = _mul_monomial(den, _qmon(cq), -1)
        return Scalar(*_monic_pair(num, den), _canonical=True)

    # -- equality / hashing / display ---------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"Scalar({format_scalar(self)})"


def _qmon(e):
    mon = [0] * NVARS
    mon[0] = e
    return tuple(mon)


def _is_one_poly(g):
    return _is_const_poly(g) and g[_ZERO_MON] == 1


def _monic_pair(num, den):
    _, lc = _plead(den)
    if lc != 1:
        num = {m: c / lc for m, c in num.items()}
        den = {m: c / lc for m, c in den.items()}
    return num, den


def _canonicalize(num, den):
    if not den:
        raise ScalarDivisionError("0")
    if not num:
        return {}, _pconst(1)
    g = poly_gcd(num, den)
    if not (_is_const_poly(g) and g[_ZERO_MON] == 1):
        num = _pdivexact(num, g)
        den = _pdivexact(den, g)
    _, lc = _plead(den)
    if lc != 1:
        num = {m: c / lc for m, c in num.items()}
        den = {m: c / lc for m, c in den.items()}
    return num, den


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar.from_int(x)
    if isinstance(x, Fraction):
        return Scalar.from_fraction(x)
    return NotImplemented


def _shift_poly(p, weights):
    """Apply mi -> q^(w_i) mi; returns (poly, raise_exp) with raise_exp <= 0,
    where the returned poly equals q^(-raise_exp) times the true image."""
    out = {}
    for mon, c in p.items():
        dq = sum(w * e for w, e in zip(weights, mon[1:]))
        key = (mon[0] + dq,) + mon[1:] if dq else mon
        s = out.get(key)
        out[key] = c if s is None else s + c
    out = {m: c for m, c in out.items() if c}
    minq = min((m[0] for m in out), default=0)
    if minq < 0:
        out = {(m[0] - minq,) + m[1:]: c for m, c in out.items()}
        return out, minq
    return out, 0


ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)


# --------------------------------------------------------------------------
# expression grammar: q, m1..m9, integers, + - * / ^ ( ), ^ binds tightest
# --------------------------------------------------------------------------

_VAR_SLOTS = {"q": 0, **{f"m{i}": i for i in range(1, 10)}}


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens = []
        self._run()

    def _error(self, msg):
        raise ScalarParseError(msg, self.line, self.col)

    def _run(self):
        text = self.text
        n = len(text)
        while self.pos < n:
            ch = text[self.pos]
            if ch == "\n":
                self.pos += 1
                self.line += 1
                self.col = 1
                continue
            if ch.isspace():
                self.pos += 1
                self.col += 1
                continue
            start_line, start_col = self.line, self.col
            if ch.isdigit():
                j = self.pos
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", int(text[self.pos:j]), start_line, start_col))
                self.col += j - self.pos
                self.pos = j
                continue
            if ch.isalpha():
                j = self.pos
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                name = text[self.pos:j]
                if name not in _VAR_SLOTS:
                    self._error(f"unknown symbol '{name}'")
                self.tokens.append(("var", name, start_line, start_col))
                self.col += j - self.pos
                self.pos = j
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, start_line, start_col))
                self.pos += 1
                self.col += 1
                continue
            self._error(f"unexpected character '{ch}'")
        self.tokens.append(("end", None, self.line, self.col))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _Lexer(text).tokens
        self.i = 0

    def _peek(self):
        return self.tokens[self.i]

    def _next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _error(self, msg, tok):
        raise ScalarParseError(msg, tok[2], tok[3])

    def parse(self):
        value = self._expr()
        tok = self._peek()
        if tok[0] != "end":
            self._error(f"unexpected token '{tok[1]}'", tok)
        return value

    def _expr(self):
        value = self._term()
        while True:
            tok = self._peek()
            if tok[0] == "+":
                self._next()
                value = value + self._term()
            elif tok[0] == "-":
                self._next()
                value = value - self._term()
            else:
                return value

    def _term(self):
        value = self._factor()
        while True:
            tok = self._peek()
            if tok[0] == "*":
                self._next()
                value = value * self._factor()
            elif tok[0] == "/":
                self._next()
                divisor = self._factor()
                if divisor.is_zero():
                    self._error("division by zero", tok)
                value = value / divisor
            else:
                return value

    def _factor(self):
        tok = self._peek()
        if tok[0] == "-":
            self._next()
            return -self._factor()
        if tok[0] == "+":
            self._next()
            return self._factor()
        return self._power()

    def _power(self):
        base = self._atom()
        tok = self._peek()
        if tok[0] == "^":
            self._next()
            return base ** self._exponent()
        return base

    def _exponent(self):
        tok = self._next()
        if tok[0] == "int":
            return tok[1]
        if tok[0] == "-":
            inner = self._next()
            if inner[0] != "int":
                self._error("expected integer exponent", inner)
            return -inner[1]
        if tok[0] == "(":
            sign = 1
            inner = self._next()
            if inner[0] == "-":
                sign = -1
                inner = self._next()
            if inner[0] != "int":
                self._error("expected integer exponent", inner)
            close = self._next()
            if close[0] != ")":
                self._error("expected ')'", close)
            return sign * inner[1]
        self._error("expected integer exponent", tok)

    def _atom(self):
        tok = self._next()
        if tok[0] == "int":
            return Scalar.from_int(tok[1])
        if tok[0] == "var":
            slot = _VAR_SLOTS[tok[1]]
            return Scalar.q() if slot == 0 else Scalar.m(slot)
        if tok[0] == "(":
            value = self._expr()
            close = self._next()
            if close[0] != ")":
                self._error("expected ')'", close)
            return value
        self._error(f"unexpected token '{tok[1]}'", tok)


def parse_scalar(text):
    return _Parser(text).parse()


_SLOT_NAMES = ["q"] + [f"m{i}" for i in range(1, 10)]


def _coeff_to_str(c):
    num, den = c.numerator, c.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def _mon_to_str(mon, coeff):
    parts = []
    for slot, e in enumerate(mon):
        if e == 0:
            continue
        name = _SLOT_NAMES[slot]
        parts.append(name if e == 1 else f"{name}^{e}")
    if not parts:
        return _coeff_to_str(coeff)
    body = "*".join(parts)
    if coeff == 1:
        return body
    if coeff == -1:
        return f"-{body}"
    return f"{_coeff_to_str(coeff)}*{body}"


def _poly_to_str(p):
    if not p:
        return "0"
    terms = sorted(p.items(), key=lambda kv: _mon_key(kv[0]), reverse=True)
    out = _mon_to_str(*terms[0])
    for mon, c in terms[1:]:
        s = _mon_to_str(mon, c)
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def format_scalar(s):
    """Canonical text form; parse_scalar(format_scalar(s)) == s."""
    num = _poly_to_str(s.num)
    if s.den == _pconst(1):
        return num
    return f"({num})/({_poly_to_str(s.den)})"
