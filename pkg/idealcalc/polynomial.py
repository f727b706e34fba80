"""
Polynomial rings, monomial orders, polynomials, and the text grammar.

Monomials are exponent tuples. Polynomials are immutable maps from
exponent tuples to nonzero field elements.
"""

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import MAX_VARS, OrderKind
from .errors import (
    DimensionMismatchError,
    IdealCalcError,
    OrderError,
    ParseError,
    RingMismatchError,
)
from .field import Field

Monomial = Tuple[int, ...]


# =============================================================================
# MONOMIAL HELPERS
# =============================================================================

def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def monomials_of_degree(num_vars: int, degree: int) -> List[Monomial]:
    """All monomials of a total degree, in decreasing lex order."""
    if degree < 0:
        return []
    if num_vars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - first):
            out.append((first,) + rest)
    return out


# =============================================================================
# MONOMIAL ORDERS
# =============================================================================

def _grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


class MonomialOrder:
    """
    Monomial order given by a sort key: larger key means larger monomial.

    elimination(k): first compares total degree in the first k variables,
    then grevlex on all variables.
    """

    def __init__(self, kind: OrderKind = OrderKind.GREVLEX, block: int = 0):
        if kind is OrderKind.SCHREYER:
            raise OrderError("Schreyer orders are module orders; use groebner.SchreyerOrder")
        if kind is OrderKind.ELIMINATION and block < 1:
            raise OrderError("elimination order needs a block of at least one variable")
        self.kind = kind
        self.block = block if kind is OrderKind.ELIMINATION else 0

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls(OrderKind.GREVLEX)

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls(OrderKind.LEX)

    @classmethod
    def elimination(cls, block: int) -> "MonomialOrder":
        return cls(OrderKind.ELIMINATION, block)

    @property
    def is_graded(self) -> bool:
        return self.kind is OrderKind.GREVLEX

    def key(self, e: Monomial):
        if self.kind is OrderKind.GREVLEX:
            return _grevlex_key(e)
        if self.kind is OrderKind.LEX:
            return e
        return (sum(e[: self.block]), _grevlex_key(e))

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.kind, self.block) == (other.kind, other.block)

    def __hash__(self) -> int:
        return hash((self.kind, self.block))

    def __repr__(self) -> str:
        if self.kind is OrderKind.ELIMINATION:
            return f"elimination({self.block})"
        return self.kind.value


# =============================================================================
# RING
# =============================================================================

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolynomialRing:
    """
    Standard-graded polynomial ring k[x_0, ..., x_{n}].

    Usage:
        S = PolynomialRing(["x0", "x1", "x2", "x3"])
        f = S.parse("x0*x2 - x1^2")
    """

    def __init__(self, var_names: Sequence[str], field: Optional[Field] = None,
                 order: Optional[MonomialOrder] = None):
        names = tuple(var_names)
        if not names:
            raise DimensionMismatchError("a ring needs at least one variable")
        if len(names) > MAX_VARS:
            raise DimensionMismatchError(f"{len(names)} variables exceeds the limit of {MAX_VARS}")
        if len(set(names)) != len(names):
            raise IdealCalcError(f"variable names are not distinct: {names}")
        for name in names:
            if not _IDENT.match(name):
                raise ParseError(f"invalid variable name {name!r}")
        self.var_names = names
        self.field = field if field is not None else Field()
        self.order = order if order is not None else MonomialOrder.grevlex()

    @classmethod
    def standard(cls, num_vars: int, field: Optional[Field] = None, prefix: str = "x") -> "PolynomialRing":
        return cls([f"{prefix}{i}" for i in range(num_vars)], field)

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolynomialRing) and self.var_names == other.var_names
                and self.field == other.field and self.order == other.order)

    def __hash__(self) -> int:
        return hash((self.var_names, self.field, self.order))

    def __repr__(self) -> str:
        return f"{self.field}[{', '.join(self.var_names)}]"

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.var_names, self.field, order)

    def with_field(self, field: Field) -> "PolynomialRing":
        return PolynomialRing(self.var_names, field, self.order)

    def with_prepended(self, names: Sequence[str], order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(tuple(names) + self.var_names, self.field, order)

    def fresh_name(self, base: str) -> str:
        name = base
        while name in self.var_names:
            name = "_" + name
        return name

    # ====== constructors ======

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.num_vars: c})

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        if len(exps) != self.num_vars:
            raise DimensionMismatchError(f"exponent vector {exps} for {self.num_vars} variables")
        return Polynomial(self, {tuple(exps): coeff})

    def var(self, index) -> "Polynomial":
        if isinstance(index, str):
            index = self.var_names.index(index)
        exps = [0] * self.num_vars
        exps[index] = 1
        return self.monomial(tuple(exps))

    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(self.num_vars)]

    def linear_form(self, coefficients: Sequence) -> "Polynomial":
        terms = {}
        for i, c in enumerate(coefficients):
            exps = [0] * self.num_vars
            exps[i] = 1
            terms[tuple(exps)] = c
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


# =============================================================================
# POLYNOMIAL
# =============================================================================

class Polynomial:
    """Exact polynomial in canonical form (no zero coefficients)."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolynomialRing, terms: Optional[Dict[Monomial, object]] = None,
                 normalized: bool = False):
        self.ring = ring
        if normalized:
            self._terms = terms
            return
        field = ring.field
        clean: Dict[Monomial, object] = {}
        for exps, c in (terms or {}).items():
            c = field.element(c)
            if c != 0:
                clean[tuple(exps)] = c
        self._terms = clean

    # ====== accessors ======

    @property
    def term_dict(self) -> Dict[Monomial, object]:
        return self._terms

    def terms(self, order: Optional[MonomialOrder] = None) -> List[Tuple[Monomial, object]]:
        order = order or self.ring.order
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monomials(self) -> List[Monomial]:
        return [e for e, _ in self.terms()]

    def coefficient(self, exps: Monomial):
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Monomial, object]:
        if not self._terms:
            raise IdealCalcError("zero polynomial has no leading term")
        order = order or self.ring.order
        exps = max(self._terms, key=order.key)
        return exps, self._terms[exps]

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: Optional[MonomialOrder] = None):
        return self.leading_term(order)[1]

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        parts: Dict[int, Dict[Monomial, object]] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t, normalized=True) for d, t in parts.items()}

    def linear_coefficients(self) -> List:
        """Coefficient vector of a linear form."""
        if any(sum(e) != 1 for e in self._terms):
            raise IdealCalcError(f"{self} is not a linear form")
        out = [self.ring.field.zero] * self.ring.num_vars
        for e, c in self._terms.items():
            out[e.index(1)] = c
        return out

    # ====== arithmetic ======

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring} vs {self.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        field = self.ring.field
        terms = dict(self._terms)
        for e, c in other._terms.items():
            v = field.add(terms.get(e, field.zero), c)
            if v == 0:
                terms.pop(e, None)
            else:
                terms[e] = v
        return Polynomial(self.ring, terms, normalized=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial(self.ring, {e: field.neg(c) for e, c in self._terms.items()}, normalized=True)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        field = self.ring.field
        terms: Dict[Monomial, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                v = field.add(terms.get(e, field.zero), field.mul(c1, c2))
                if v == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = v
        return Polynomial(self.ring, terms, normalized=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise IdealCalcError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * self.ring.constant(c)

    def mul_monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        field = self.ring.field
        coeff = field.element(coeff)
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(e, exps): field.mul(c, coeff) for e, c in self._terms.items()},
                          normalized=True)

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient self / divisor; raises if the division leaves a remainder."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.ring.field
        order = self.ring.order
        lead, lc = divisor.leading_term(order)
        rest = dict(self._terms)
        quotient: Dict[Monomial, object] = {}
        while rest:
            e = max(rest, key=order.key)
            if not mono_divides(lead, e):
                raise IdealCalcError(f"{divisor} does not divide {self}")
            shift = mono_div(e, lead)
            factor = field.div(rest[e], lc)
            quotient[shift] = factor
            for e2, c2 in divisor._terms.items():
                t = mono_mul(e2, shift)
                v = field.sub(rest.get(t, field.zero), field.mul(factor, c2))
                if v == 0:
                    rest.pop(t, None)
                else:
                    rest[t] = v
        return Polynomial(self.ring, quotient, normalized=True)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map x_i -> images[i]."""
        if len(images) != self.ring.num_vars:
            raise DimensionMismatchError(f"{len(images)} images for {self.ring.num_vars} variables")
        target = images[0].ring
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if (i, k) not in powers:
                powers[(i, k)] = target.one() if k == 0 else power(i, k - 1) * images[i]
            return powers[(i, k)]

        result = target.zero()
        for e, c in self._terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def map_terms(self, ring: PolynomialRing, exps_map: Callable[[Monomial], Monomial]) -> "Polynomial":
        return Polynomial(ring, {exps_map(e): c for e, c in self._terms.items()})

    def lift(self, ring: PolynomialRing) -> "Polynomial":
        """Same polynomial over another field, coefficients through their symmetric representatives."""
        field = self.ring.field
        return Polynomial(ring, {e: field.symmetric(c) for e, c in self._terms.items()})

    # ====== comparison & printing ======

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f: Polynomial) -> str:
    """Print in the shared text grammar, terms in decreasing ring order."""
    field = f.ring.field
    names = f.ring.var_names
    pieces: List[str] = []
    for exps, c in f.terms():
        c = field.symmetric(c)
        negative = c < 0
        mag = -c if negative else c
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(exps) if k
        )
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


# =============================================================================
# PARSER
# =============================================================================

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """
    Recursive descent over the grammar
        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor (['*'] factor)*
        factor := atom ['^' INT]
        atom   := INT ['/' INT] | NAME | '(' expr ')'
    Names are split into declared variables by longest match, so "x0x2"
    reads as x0*x2.
    """

    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        names = sorted(self.ring.var_names, key=len, reverse=True)
        index = 0
        while index < len(text):
            if text[index:].strip() == "":
                break
            m = _TOKEN.match(text, index)
            number, ident, other = m.groups()
            start = m.start(1) if number else m.start(2) if ident else m.start(3)
            if number:
                tokens.append(("int", number, start))
            elif ident:
                offset = 0
                while offset < len(ident):
                    for name in names:
                        if ident.startswith(name, offset):
                            tokens.append(("var", name, start + offset))
                            offset += len(name)
                            break
                    else:
                        raise ParseError(f"unknown variable in {ident!r}", text, start + offset)
            else:
                if other not in "+-*^()/":
                    raise ParseError(f"unexpected character {other!r}", text, start)
                tokens.append(("op", other, start))
            index = m.end()
        return tokens

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, value: Optional[str] = None) -> Tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", self.text, tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial", self.text, 0)
        result = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return result

    def _expr(self) -> Polynomial:
        sign = 1
        tok = self._peek()
        if tok is not None and tok[1] in "+-" and tok[0] == "op":
            self._take()
            sign = -1 if tok[1] == "-" else 1
        result = self._term().scale(sign)
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return result
            self._take()
            term = self._term()
            result = result + term if tok[1] == "+" else result - term

    def _term(self) -> Polynomial:
        result = self._factor()
        while True:
            tok = self._peek()
            if tok is None:
                return result
            if tok[0] == "op" and tok[1] == "*":
                self._take()
                result = result * self._factor()
            elif tok[0] in ("int", "var") or tok[1] == "(":
                result = result * self._factor()
            else:
                return result

    def _factor(self) -> Polynomial:
        base = self._atom()
        tok = self._peek()
        if tok is not None and tok[1] == "^":
            self._take()
            exp = self._take()
            if exp[0] != "int":
                raise ParseError("exponent must be a non-negative integer", self.text, exp[2])
            return base ** int(exp[1])
        return base

    def _atom(self) -> Polynomial:
        tok = self._take()
        kind, value, where = tok
        if kind == "int":
            nxt = self._peek()
            if nxt is not None and nxt[1] == "/":
                self._take()
                den = self._take()
                if den[0] != "int" or int(den[1]) == 0:
                    raise ParseError("bad rational coefficient", self.text, den[2])
                return self.ring.constant(Fraction(int(value), int(den[1])))
            return self.ring.constant(int(value))
        if kind == "var":
            return self.ring.var(value)
        if value == "(":
            inner = self._expr()
            self._take(")")
            return inner
        raise ParseError(f"unexpected {value!r}", self.text, where)


def parse_polynomials(ring: PolynomialRing, texts: Iterable[str]) -> List[Polynomial]:
    return [ring.parse(t) for t in texts]
