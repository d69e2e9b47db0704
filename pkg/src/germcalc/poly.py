"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a mapping from exponent tuples to nonzero Fraction
coefficients, together with an ordered tuple of variable names.  The zero
polynomial has an empty term map.  All arithmetic is exact; there is no
floating point anywhere in this package.

Variables follow one canonical ambient ordering (source, divided-difference
copies, target):

    x, y, y', y'', X, Y, Z

Rings are tuples of names ordered by that sequence.  Two polynomials must
live over the same tuple to be combined; embedding into a larger ring is an
explicit operation (``extend``), never implicit.

Beyond ring arithmetic this module carries the algebraic subroutines the
rest of the package consumes: exact division, multivariate gcd (subresultant
polynomial remainder sequences with content/primitive-part recursion),
squarefree parts, Sylvester resultants, fraction-free determinants, and the
text grammar used by all inputs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd as int_gcd

from .errors import ExactDivisionError, InputError

CANONICAL_VARS = ("x", "y", "y'", "y''", "X", "Y", "Z")
_CANON_INDEX = {v: i for i, v in enumerate(CANONICAL_VARS)}

Exponent = tuple  # tuple[int, ...], one entry per ring variable


def canonical_ring(names) -> tuple:
    """Sort variable names into the canonical ambient order."""
    names = list(dict.fromkeys(names))
    for n in names:
        if n not in _CANON_INDEX:
            raise InputError(f"unknown variable {n!r}")
    return tuple(sorted(names, key=_CANON_INDEX.__getitem__))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be exact (int or Fraction), got {type(c)!r}")


class Poly:
    """Immutable sparse polynomial over Q with a fixed variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms):
        object.__setattr__(self, "vars", tuple(variables))
        clean = {}
        for exp, c in terms.items():
            c = _as_fraction(c)
            if c != 0:
                clean[tuple(exp)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "Poly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables, c) -> "Poly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): _as_fraction(c)})

    @classmethod
    def var(cls, variables, name) -> "Poly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls(variables, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, variables, exp, c=1) -> "Poly":
        return cls(variables, {tuple(exp): _as_fraction(c)})

    # -- basic queries ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def constant_term(self) -> Fraction:
        zero_exp = (0,) * len(self.vars)
        return self.terms.get(zero_exp, Fraction(0))

    @property
    def is_unit(self) -> bool:
        """Unit of the local ring at the origin: nonzero constant term."""
        return self.constant_term != 0

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int:
        """Minimal total degree of a term; requires a nonzero polynomial."""
        if not self.terms:
            raise ValueError("order of the zero polynomial is undefined")
        return min(sum(e) for e in self.terms)

    def degree_in(self, name) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coeff(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def used_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, ei in enumerate(e):
                if ei:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- ring arithmetic --------------------------------------------------

    def _check_ring(self, other: "Poly"):
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return Poly.zero(self.vars)
            return Poly(self.vars, {e: k * c for e, k in self.terms.items()})
        self._check_ring(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.vars)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def diff(self, name) -> "Poly":
        """Formal partial derivative."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                e2 = tuple(e2)
                out[e2] = out.get(e2, Fraction(0)) + c * e[i]
        return Poly(self.vars, out)

    # -- ring changes ------------------------------------------------------

    def extend(self, variables) -> "Poly":
        """Embed into a ring over a superset of the variables."""
        variables = tuple(variables)
        pos = []
        for v in self.vars:
            if v not in variables:
                raise ValueError(f"target ring misses variable {v!r}")
            pos.append(variables.index(v))
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for p, ei in zip(pos, e):
                e2[p] = ei
            out[tuple(e2)] = c
        return Poly(variables, out)

    def restrict(self, variables) -> "Poly":
        """Project onto a subring; fails if a dropped variable occurs."""
        variables = tuple(variables)
        keep = [self.vars.index(v) for v in variables]
        dropped = [i for i, v in enumerate(self.vars) if v not in variables]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise ValueError("polynomial uses a dropped variable")
            out[tuple(e[i] for i in keep)] = c
        return Poly(variables, out)

    def rename(self, mapping: dict) -> "Poly":
        """Rename variables; the new ring is re-sorted canonically."""
        new_names = [mapping.get(v, v) for v in self.vars]
        if len(set(new_names)) != len(new_names):
            raise ValueError("rename collides variable names")
        ring = canonical_ring(new_names)
        perm = [new_names.index(v) for v in ring]
        out = {}
        for e, c in self.terms.items():
            out[tuple(e[p] for p in perm)] = c
        return Poly(ring, out)

    def subs(self, assignment: dict) -> "Poly":
        """Exact substitution; every variable must be assigned a Poly.

        All assigned values must live over one common ring, which becomes
        the ring of the result.
        """
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise ValueError(f"unassigned variables: {missing}")
        values = [assignment[v] for v in self.vars]
        ring = values[0].vars
        for val in values:
            if val.vars != ring:
                raise ValueError("substitution values live over different rings")
        pow_cache = [{0: Poly.const(ring, 1)} for _ in values]

        def power(i, k):
            cache = pow_cache[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * values[i]
            return cache[k]

        acc = Poly.zero(ring)
        for e, c in self.terms.items():
            term = Poly.const(ring, c)
            for i, ei in enumerate(e):
                if ei:
                    term = term * power(i, ei)
            acc = acc + term
        return acc

    # -- display -----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({'+'.join(self.vars)}: {format_poly(self)})"


def arith(p: Poly, q: Poly, op: str) -> Poly:
    """Dispatch add/sub/mul by name (service surface)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Leading terms under graded lex (used for exact division and normal forms
# that do not depend on a local order).
# ---------------------------------------------------------------------------


def _deglex_key(exp):
    return (sum(exp), exp)


def lead_term_deglex(p: Poly):
    """(exponent, coefficient) of the graded-lex leading term."""
    if p.is_zero:
        raise ValueError("zero polynomial has no leading term")
    e = max(p.terms, key=_deglex_key)
    return e, p.terms[e]


def exact_div(p: Poly, d: Poly) -> Poly:
    """Quotient p/d when d divides p exactly; ExactDivisionError otherwise."""
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_ring(d)
    if d.is_constant:
        c = d.constant_term
        return Poly(p.vars, {e: k / c for e, k in p.terms.items()})
    ed, cd = lead_term_deglex(d)
    q = {}
    r = p
    while not r.is_zero:
        er, cr = lead_term_deglex(r)
        diff = tuple(a - b for a, b in zip(er, ed))
        if any(a < 0 for a in diff):
            raise ExactDivisionError("division is not exact")
        c = cr / cd
        q[diff] = c
        r = r - Poly.monomial(p.vars, diff, c) * d
    return Poly(p.vars, q)


def divides(d: Poly, p: Poly) -> bool:
    if p.is_zero:
        return not d.is_zero
    try:
        exact_div(p, d)
        return True
    except ExactDivisionError:
        return False


# ---------------------------------------------------------------------------
# Canonical associates, contents, gcd.
# ---------------------------------------------------------------------------


def canonical_associate(p: Poly) -> Poly:
    """Scale by a rational so coefficients are coprime integers with a
    positive graded-lex leading coefficient.  Canonical form for results
    defined only up to a unit (gcds, squarefree parts, curve equations)."""
    if p.is_zero:
        return p
    den_lcm = 1
    for c in p.terms.values():
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    num_gcd = 0
    for c in p.terms.values():
        num_gcd = int_gcd(num_gcd, c.numerator * (den_lcm // c.denominator))
    scale = Fraction(den_lcm, num_gcd)
    _, lead = lead_term_deglex(p)
    if lead < 0:
        scale = -scale
    return p * scale


def _coeff_in(p: Poly, v: str, k: int) -> Poly:
    """Coefficient of v**k, as a polynomial with v-degree 0 in the same ring."""
    i = p.vars.index(v)
    out = {}
    for e, c in p.terms.items():
        if e[i] == k:
            e2 = list(e)
            e2[i] = 0
            out[tuple(e2)] = c
    return Poly(p.vars, out)


def _univariate_coeffs(p: Poly, v: str) -> dict:
    """Map v-degree -> coefficient Poly (v-free), for nonzero coefficients."""
    i = p.vars.index(v)
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        e2 = list(e)
        e2[i] = 0
        bucket = out.setdefault(k, {})
        bucket[tuple(e2)] = c
    return {k: Poly(p.vars, t) for k, t in out.items()}


def _pseudo_rem(f: Poly, g: Poly, v: str) -> Poly:
    """Pseudo-remainder prem(f, g) with respect to v: lc(g)^(df-dg+1) f mod g."""
    dg = g.degree_in(v)
    lg = _coeff_in(g, v, dg)
    r = f
    e = f.degree_in(v) - dg + 1
    while not r.is_zero and r.degree_in(v) >= dg:
        dr = r.degree_in(v)
        lr = _coeff_in(r, v, dr)
        shift = Poly.var(f.vars, v) ** (dr - dg)
        r = lg * r - lr * shift * g
        e -= 1
    if e > 0:
        r = (lg ** e) * r
    return r


def _content_pp(p: Poly, v: str):
    """Content and primitive part of p viewed as univariate in v."""
    coeffs = _univariate_coeffs(p, v)
    content = Poly.zero(p.vars)
    for k in sorted(coeffs, reverse=True):
        content = poly_gcd(content, coeffs[k])
        if content.is_constant and not content.is_zero:
            break
    content = canonical_associate(content)
    return content, exact_div(p, content)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Multivariate gcd over Q via subresultant PRS on a main variable,
    recursing through contents.  Result is a canonical associate."""
    if p.is_zero:
        return canonical_associate(q)
    if q.is_zero:
        return canonical_associate(p)
    if p.is_constant or q.is_constant:
        return Poly.const(p.vars, 1)
    used = [v for v in p.vars if v in set(p.used_vars()) | set(q.used_vars())]
    # main variable: smallest joint degree keeps the remainder sequence short
    v = min(used, key=lambda u: (max(p.degree_in(u), q.degree_in(u))
                                 if max(p.degree_in(u), q.degree_in(u)) > 0
                                 else 10 ** 9, _CANON_INDEX[u]))
    if max(p.degree_in(v), q.degree_in(v)) <= 0:
        return Poly.const(p.vars, 1)
    cp, fp = _content_pp(p, v)
    cq, fq = _content_pp(q, v)
    c = poly_gcd(cp, cq)
    f, g = (fp, fq) if fp.degree_in(v) >= fq.degree_in(v) else (fq, fp)
    if g.degree_in(v) == 0:
        # primitive and v-free means constant
        return canonical_associate(c)
    h = Poly.const(p.vars, 1)
    prev_lc = Poly.const(p.vars, 1)
    first = True
    while True:
        delta = f.degree_in(v) - g.degree_in(v)
        r = _pseudo_rem(f, g, v)
        if r.is_zero:
            break
        if r.degree_in(v) == 0:
            return canonical_associate(c)
        if first:
            divisor = Poly.const(p.vars, (-1) ** (delta + 1))
            first = False
        else:
            divisor = prev_lc * h ** delta
        f, g = g, exact_div(r, divisor)
        prev_lc = _coeff_in(f, v, f.degree_in(v))
        if delta > 0:
            h = exact_div(prev_lc ** delta, h ** (delta - 1)) if delta > 1 else prev_lc
    _, gg = _content_pp(g, v)
    return canonical_associate(c * gg)


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of p (char 0):
    p / gcd(p, all partials), canonically normalized."""
    if p.is_zero:
        raise ValueError("squarefree part of zero is undefined")
    if p.is_constant:
        return Poly.const(p.vars, 1)
    g = p
    for v in p.used_vars():
        g = poly_gcd(g, p.diff(v))
        if g.is_constant:
            break
    return canonical_associate(exact_div(p, g))


# ---------------------------------------------------------------------------
# Determinants and resultants.
# ---------------------------------------------------------------------------


def det(matrix) -> Poly:
    """Fraction-free (Bareiss) determinant of a square matrix of Polys."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix has no ring to provide the unit")
    ring = matrix[0][0].vars
    m = [list(row) for row in matrix]
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    sign = 1
    prev = Poly.const(ring, 1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot_row is None:
                return Poly.zero(ring)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = Poly.zero(ring)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(p: Poly, q: Poly, v: str):
    """Sylvester matrix of p, q with respect to v; entries are v-free Polys."""
    m, n = p.degree_in(v), q.degree_in(v)
    if m <= 0 or n <= 0:
        raise ValueError(f"both polynomials must have positive degree in {v}")
    ring = p.vars
    pc = [_coeff_in(p, v, k) for k in range(m, -1, -1)]
    qc = [_coeff_in(q, v, k) for k in range(n, -1, -1)]
    size = m + n
    zero = Poly.zero(ring)
    rows = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - i - n - 1))
    return rows


def resultant(p: Poly, q: Poly, v: str) -> Poly:
    """Determinant of the Sylvester matrix; sign is not normalized.

    Both arguments must have positive degree in v; the result is v-free.
    """
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of the zero polynomial")
    if p.degree_in(v) <= 0 or q.degree_in(v) <= 0:
        raise ValueError(f"resultant requires positive degree in {v}")
    return det(sylvester_matrix(p, q, v))


# ---------------------------------------------------------------------------
# Text grammar: integers, rationals a/b, variables, + - * ^, parentheses.
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalpha() or text[j] == "'"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch))
            i += 1
            continue
        raise InputError(f"unexpected character {ch!r} in polynomial")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise InputError(f"expected {kind!r}, found {tok[0]!r}")
        self.pos += 1
        return tok

    def expr(self) -> Poly:
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = self.term() * sign
        else:
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while self.peek() == "*":
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                raise InputError("exponent must be a nonnegative integer")
            _, k = self.take("int")
            return base ** (sign * k)
        return base

    def atom(self) -> Poly:
        kind = self.peek()
        if kind == "int":
            _, a = self.take()
            if self.peek() == "/":
                self.take()
                _, b = self.take("int")
                if b == 0:
                    raise InputError("zero denominator")
                return Poly.const(self.ring, Fraction(a, b))
            return Poly.const(self.ring, a)
        if kind == "name":
            _, name = self.take()
            if name not in self.ring:
                raise InputError(f"variable {name!r} not allowed here")
            return Poly.var(self.ring, name)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.atom()
        raise InputError(f"unexpected token {kind!r}")


def parse_poly(text: str, variables) -> Poly:
    """Parse the input grammar over the given ring."""
    ring = tuple(variables)
    parser = _Parser(_tokenize(text), ring)
    p = parser.expr()
    if parser.peek() != "end":
        raise InputError("trailing input after polynomial")
    return p


def format_poly(p: Poly) -> str:
    """Canonical text form; parse_poly(format_poly(p), p.vars) == p."""
    if p.is_zero:
        return "0"
    pieces = []
    for e in sorted(p.terms, key=_deglex_key, reverse=True):
        c = p.terms[e]
        factors = [f"{v}^{k}" if k > 1 else v
                   for v, k in zip(p.vars, e) if k]
        mono = "*".join(factors)
        if not mono:
            body = _frac_str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_frac_str(abs(c))}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    head_sign, head = pieces[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
