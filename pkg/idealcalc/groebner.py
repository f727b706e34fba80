"""
Buchberger's algorithm for ideals and for submodules of graded free modules,
normal forms, elimination, Schreyer syzygies, kernels, minimal generators.

Module elements are maps (component, exponents) -> coefficient. An ideal is
the one-component case with twist 0.
"""

import heapq
import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import config
from .config import OrderKind, PositionPolicy
from .errors import (
    DegreeGuardExceeded,
    DimensionMismatchError,
    IdealCalcError,
    InhomogeneousInputError,
    OrderError,
    RingMismatchError,
)
from .linalg import rref
from .polynomial import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

logger = logging.getLogger(__name__)

Term = Tuple[int, Monomial]
TermDict = Dict[Term, object]


# =============================================================================
# MODULE ORDERS
# =============================================================================

class ModuleOrder:
    """
    Monomial order on a free module with basis e_0, ..., e_{r-1}.

    term-over-position compares (degree + twist, monomial, position);
    position-over-term compares position first, e_0 largest.
    """

    def __init__(self, base: Optional[MonomialOrder] = None,
                 policy: PositionPolicy = PositionPolicy.TERM_OVER_POSITION,
                 twists: Optional[Sequence[int]] = None):
        self.base = base or MonomialOrder.grevlex()
        self.policy = policy
        self.twists = list(twists) if twists is not None else None
        self.kind = self.base.kind

    def key(self, term: Term):
        c, e = term
        if self.policy is PositionPolicy.POSITION_OVER_TERM:
            return (-c, self.base.key(e))
        if self.twists is not None and self.base.is_graded:
            return (sum(e) + self.twists[c], self.base.key(e), -c)
        return (self.base.key(e), -c)

    def __repr__(self) -> str:
        return f"ModuleOrder({self.base!r}, {self.policy.value})"


class SchreyerOrder:
    """
    Order induced on a free module F' -> F by elements g_0, ..., g_{m-1}:
    x^a e'_i > x^b e'_j iff lead(x^a g_i) > lead(x^b g_j), ties broken by i < j.
    """

    kind = OrderKind.SCHREYER
    policy = PositionPolicy.TERM_OVER_POSITION

    def __init__(self, previous, leads: Sequence[Term]):
        self.previous = previous
        self.leads = list(leads)
        self.base = previous.base

    def key(self, term: Term):
        c, e = term
        lc, le = self.leads[c]
        return (self.previous.key((lc, mono_mul(e, le))), -c)

    def __repr__(self) -> str:
        return f"SchreyerOrder({len(self.leads)} leads)"


def _memo(fn: Callable) -> Callable:
    cache: Dict = {}

    def wrapped(x):
        value = cache.get(x)
        if value is None:
            value = cache[x] = fn(x)
        return value

    return wrapped


# =============================================================================
# VECTOR ELEMENTS
# =============================================================================

class VectorElement:
    """
    Element of the graded free module F = sum_i S(-twists[i]).

    Homogeneous iff deg(entry_i) + twists[i] is constant over nonzero entries.
    """

    __slots__ = ("ring", "rank", "twists", "terms")

    def __init__(self, ring: PolynomialRing, terms: TermDict, rank: int,
                 twists: Optional[Sequence[int]] = None, normalized: bool = False):
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists) if twists is not None else (0,) * rank
        if len(self.twists) != rank:
            raise DimensionMismatchError(f"{len(self.twists)} twists for rank {rank}")
        if normalized:
            self.terms = terms
        else:
            field = ring.field
            clean = {}
            for (c, e), v in terms.items():
                if not 0 <= c < rank:
                    raise DimensionMismatchError(f"component {c} outside rank {rank}")
                v = field.element(v)
                if v != 0:
                    clean[(c, tuple(e))] = v
            self.terms = clean

    @classmethod
    def from_polynomial(cls, f: Polynomial, twist: int = 0) -> "VectorElement":
        return cls(f.ring, {(0, e): c for e, c in f.term_dict.items()}, 1, (twist,), normalized=True)

    @classmethod
    def from_entries(cls, ring: PolynomialRing, entries: Sequence[Polynomial],
                     twists: Optional[Sequence[int]] = None) -> "VectorElement":
        terms = {}
        for c, f in enumerate(entries):
            if f.ring != ring:
                raise RingMismatchError(f"{f.ring} vs {ring}")
            for e, v in f.term_dict.items():
                terms[(c, e)] = v
        return cls(ring, terms, len(entries), twists, normalized=True)

    @classmethod
    def basis_vector(cls, ring: PolynomialRing, index: int, rank: int,
                     twists: Optional[Sequence[int]] = None) -> "VectorElement":
        return cls(ring, {(index, (0,) * ring.num_vars): ring.field.one}, rank, twists, normalized=True)

    def entry(self, c: int) -> Polynomial:
        return Polynomial(self.ring, {e: v for (k, e), v in self.terms.items() if k == c}, normalized=True)

    def entries(self) -> List[Polynomial]:
        return [self.entry(c) for c in range(self.rank)]

    def to_polynomial(self) -> Polynomial:
        if self.rank != 1:
            raise DimensionMismatchError("only rank-one elements are polynomials")
        return self.entry(0)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise IdealCalcError("zero element has no degree")
        return max(sum(e) + self.twists[c] for c, e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) + self.twists[c] for c, e in self.terms}) <= 1

    def leading_term(self, order) -> Tuple[Term, object]:
        t = max(self.terms, key=order.key)
        return t, self.terms[t]

    def _check(self, other: "VectorElement"):
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("vector elements live in different free modules")

    def __add__(self, other: "VectorElement") -> "VectorElement":
        self._check(other)
        terms = dict(self.terms)
        _axpy(terms, other.terms, self.ring.field.neg(self.ring.field.one), (0,) * self.ring.num_vars, self.ring.field)
        return VectorElement(self.ring, terms, self.rank, self.twists, normalized=True)

    def __neg__(self) -> "VectorElement":
        return self.scale(self.ring.field.neg(self.ring.field.one))

    def __sub__(self, other: "VectorElement") -> "VectorElement":
        return self + (-other)

    def scale(self, c) -> "VectorElement":
        field = self.ring.field
        c = field.element(c)
        if c == 0:
            return VectorElement(self.ring, {}, self.rank, self.twists, normalized=True)
        return VectorElement(self.ring, {t: field.mul(v, c) for t, v in self.terms.items()},
                             self.rank, self.twists, normalized=True)

    def mul_polynomial(self, f: Polynomial) -> "VectorElement":
        terms: TermDict = {}
        for e, c in f.term_dict.items():
            _axpy(terms, self.terms, self.ring.field.neg(c), e, self.ring.field)
        return VectorElement(self.ring, terms, self.rank, self.twists, normalized=True)

    def __eq__(self, other) -> bool:
        return (isinstance(other, VectorElement) and self.ring == other.ring
                and self.rank == other.rank and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return "[" + ", ".join(str(p) for p in self.entries()) + "]"


def _axpy(target: TermDict, source: TermDict, factor, shift: Monomial, field) -> None:
    """target -= factor * x^shift * source, in place."""
    for (c, e), v in source.items():
        t = (c, mono_mul(e, shift))
        new = field.sub(target.get(t, field.zero), field.mul(factor, v))
        if new == 0:
            target.pop(t, None)
        else:
            target[t] = new


def _as_vectors(gens: Iterable[Union[Polynomial, VectorElement]]) -> List[VectorElement]:
    return [g if isinstance(g, VectorElement) else VectorElement.from_polynomial(g) for g in gens]


# =============================================================================
# GROEBNER BASIS
# =============================================================================

class GroebnerBasis:
    """
    Groebner basis of a submodule of a graded free module.

    If reduced: leads pairwise non-divisible, tails fully reduced, monic, and
    elements sorted by increasing leading term.
    """

    def __init__(self, ring: PolynomialRing, order, elements: List[VectorElement],
                 rank: int, twists: Sequence[int], reduced: bool = True):
        self.ring = ring
        self.order = order
        self.elements = list(elements)
        self.rank = rank
        self.twists = tuple(twists)
        self.reduced = reduced
        key = _memo(order.key)
        self._key = key
        self._basis = []
        for g in self.elements:
            lead = max(g.terms, key=key)
            self._basis.append((lead, g.terms[lead], g.terms))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> VectorElement:
        return self.elements[i]

    @property
    def leads(self) -> List[Term]:
        return [b[0] for b in self._basis]

    def element_degrees(self) -> List[int]:
        return [g.degree() for g in self.elements]

    def polynomials(self) -> List[Polynomial]:
        return [g.to_polynomial() for g in self.elements]

    def normal_form(self, f):
        return normal_form(f, self)

    def contains(self, f) -> bool:
        nf = normal_form(f, self)
        return nf.is_zero()

    def is_standard(self, term: Term) -> bool:
        c, e = term
        return not any(lc == c and mono_divides(le, e) for lc, le in self.leads)

    def same_module(self, other: "GroebnerBasis") -> bool:
        """Equality of reduced bases under the same order."""
        return [g.terms for g in self.elements] == [g.terms for g in other.elements]

    def __repr__(self) -> str:
        return f"GroebnerBasis({len(self)} elements, {self.order!r})"


def _reduce(f: TermDict, basis, key, field, quotients: Optional[List[Dict[Monomial, object]]] = None) -> TermDict:
    """Full reduction of f by basis entries (lead, lead_coeff, terms)."""
    f = dict(f)
    remainder: TermDict = {}
    while f:
        lead = max(f, key=key)
        coeff = f[lead]
        comp, exps = lead
        for index, (g_lead, g_coeff, g_terms) in enumerate(basis):
            if g_lead[0] == comp and mono_divides(g_lead[1], exps):
                shift = mono_div(exps, g_lead[1])
                factor = field.div(coeff, g_coeff)
                _axpy(f, g_terms, factor, shift, field)
                if quotients is not None:
                    q = quotients[index]
                    v = field.add(q.get(shift, field.zero), factor)
                    if v == 0:
                        q.pop(shift, None)
                    else:
                        q[shift] = v
                break
        else:
            remainder[lead] = coeff
            del f[lead]
    return remainder


def _guard_degree(terms: TermDict, guard: int) -> None:
    degree = max(sum(e) for _, e in terms)
    if degree > guard:
        raise DegreeGuardExceeded(degree, guard)


def buchberger(gens: Sequence[Union[Polynomial, VectorElement]], order=None, *,
               ring: Optional[PolynomialRing] = None, rank: Optional[int] = None,
               twists: Optional[Sequence[int]] = None, homogeneous_only: bool = True,
               degree_guard: Optional[int] = None) -> GroebnerBasis:
    """
    Reduced Groebner basis of the submodule generated by gens.

    Pairs are processed by the normal strategy (smallest lcm degree first,
    ties by lcm exponents then indices) with the product criterion for
    ideals and the chain criterion.

    Args:
        gens: polynomials or vector elements in one free module
        order: MonomialOrder (ideals) or ModuleOrder / SchreyerOrder
        ring, rank, twists: describe the free module when gens is empty
        homogeneous_only: reject inhomogeneous input
        degree_guard: total-degree ceiling, default config.DEGREE_GUARD

    Returns:
        GroebnerBasis
    """
    vectors = _as_vectors(gens)
    if vectors:
        ring = vectors[0].ring
        rank = vectors[0].rank
        twists = vectors[0].twists
    if ring is None:
        raise IdealCalcError("empty generator list needs an explicit ring")
    rank = rank or 1
    twists = tuple(twists) if twists is not None else (0,) * rank
    for v in vectors:
        if v.ring != ring or v.rank != rank:
            raise RingMismatchError("generators live in different free modules")
        if homogeneous_only and not v.is_homogeneous():
            raise InhomogeneousInputError(f"inhomogeneous generator {v!r}")
    if order is None:
        order = ModuleOrder(ring.order)
    elif isinstance(order, MonomialOrder):
        order = ModuleOrder(order)
    guard = config.DEGREE_GUARD if degree_guard is None else degree_guard
    field = ring.field
    key = _memo(order.key)

    basis: List[Tuple[Term, object, TermDict]] = []
    heap: List = []
    pending = set()

    def add(terms: TermDict) -> None:
        lead = max(terms, key=key)
        inv = field.inv(terms[lead])
        terms = {t: field.mul(v, inv) for t, v in terms.items()}
        _guard_degree(terms, guard)
        idx = len(basis)
        basis.append((lead, field.one, terms))
        for j in range(idx):
            other = basis[j][0]
            if other[0] != lead[0]:
                continue
            lcm = mono_lcm(other[1], lead[1])
            if rank == 1 and sum(lcm) == sum(other[1]) + sum(lead[1]):
                continue
            heapq.heappush(heap, (sum(lcm) + twists[lead[0]], lcm, lead[0], j, idx))
            pending.add((j, idx))

    for v in vectors:
        r = _reduce(v.terms, basis, key, field)
        if r:
            add(r)

    processed = 0
    while heap:
        _, lcm, comp, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        if _chain_criterion(basis, i, j, comp, lcm, pending):
            continue
        s: TermDict = {}
        li, lj = basis[i][0][1], basis[j][0][1]
        _axpy(s, basis[i][2], field.neg(field.one), mono_div(lcm, li), field)
        _axpy(s, basis[j][2], field.one, mono_div(lcm, lj), field)
        processed += 1
        r = _reduce(s, basis, key, field)
        if r:
            add(r)

    # minimalize then interreduce
    leads = [b[0] for b in basis]
    keep = []
    for i, (c, e) in enumerate(leads):
        redundant = False
        for k, (ck, ek) in enumerate(leads):
            if k != i and ck == c and mono_divides(ek, e) and (ek != e or k < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    kept = [basis[i] for i in keep]
    reduced_terms = []
    for idx, (lead, _, terms) in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        r = _reduce(terms, others, key, field)
        inv = field.inv(r[lead])
        reduced_terms.append({t: field.mul(v, inv) for t, v in r.items()})
    reduced_terms.sort(key=lambda t: key(max(t, key=key)))
    logger.debug("buchberger: %d generators -> %d basis elements (%d S-pairs reduced)",
                 len(vectors), len(reduced_terms), processed)
    elements = [VectorElement(ring, t, rank, twists, normalized=True) for t in reduced_terms]
    return GroebnerBasis(ring, order, elements, rank, twists, reduced=True)


def _chain_criterion(basis, i: int, j: int, comp: int, lcm: Monomial, pending) -> bool:
    for k, (lead, _, _) in enumerate(basis):
        if k == i or k == j or lead[0] != comp:
            continue
        if not mono_divides(lead[1], lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def groebner_from_elements(elements: Sequence[VectorElement], order, ring: PolynomialRing,
                           rank: int, twists: Sequence[int]) -> GroebnerBasis:
    """Wrap elements already known to form a Groebner basis (e.g. Schreyer syzygies)."""
    return GroebnerBasis(ring, order, list(elements), rank, twists, reduced=False)


def normal_form(f: Union[Polynomial, VectorElement], G: GroebnerBasis):
    """Remainder of f on division by G; returns the same type as f."""
    vector = f if isinstance(f, VectorElement) else VectorElement.from_polynomial(f)
    if vector.ring != G.ring or vector.rank != G.rank:
        raise RingMismatchError("element and Groebner basis live in different free modules")
    r = _reduce(vector.terms, G._basis, G._key, G.ring.field)
    out = VectorElement(G.ring, r, vector.rank, vector.twists, normalized=True)
    return out if isinstance(f, VectorElement) else out.to_polynomial()


def reduce_with_quotients(f: VectorElement, G: GroebnerBasis) -> Tuple[VectorElement, List[Dict[Monomial, object]]]:
    quotients: List[Dict[Monomial, object]] = [dict() for _ in range(len(G))]
    r = _reduce(f.terms, G._basis, G._key, G.ring.field, quotients)
    return VectorElement(G.ring, r, f.rank, f.twists, normalized=True), quotients


def eliminate(G: GroebnerBasis, block: Optional[int] = None) -> GroebnerBasis:
    """Elements of G free of the first `block` variables."""
    base = G.order.base
    if base.kind is not OrderKind.ELIMINATION:
        raise OrderError(f"elimination needs an elimination order, got {G.order!r}")
    block = base.block if block is None else block
    if block > base.block:
        raise OrderError(f"order eliminates {base.block} variables, asked for {block}")
    kept = [g for g in G.elements if all(not any(e[:block]) for _, e in g.terms)]
    return GroebnerBasis(G.ring, G.order, kept, G.rank, G.twists, reduced=G.reduced)


# =============================================================================
# SYZYGIES
# =============================================================================

def syzygies(G: GroebnerBasis, prune: bool = True) -> List[VectorElement]:
    """
    Schreyer syzygies of the elements of G.

    For each pair i < j with leads in one component, the S-pair is lifted
    through the division algorithm. The result generates the syzygy module
    and is a Groebner basis for schreyer_order(G). With prune, only pairs
    whose lead x^(lcm/lead_i) e_i is minimal among those for fixed i are kept.
    """
    field = G.ring.field
    basis = G._basis
    m = len(basis)
    twists = G.element_degrees()
    out: List[VectorElement] = []
    for i in range(m):
        li, ci, gi = basis[i]
        candidates = []
        for j in range(i + 1, m):
            lj = basis[j][0]
            if lj[0] != li[0]:
                continue
            lcm = mono_lcm(li[1], lj[1])
            candidates.append((sum(lcm) - sum(li[1]), mono_div(lcm, li[1]), j, lcm))
        candidates.sort(key=lambda c: (c[0], c[2]))
        chosen = []
        for cand in candidates:
            if prune and any(mono_divides(q, cand[1]) for _, q, _, _ in chosen):
                continue
            chosen.append(cand)
        for _, qi, j, lcm in chosen:
            lj, cj, gj = basis[j]
            qj = mono_div(lcm, lj[1])
            ai, aj = field.inv(ci), field.inv(cj)
            s: TermDict = {}
            _axpy(s, gi, field.neg(ai), qi, field)
            _axpy(s, gj, aj, qj, field)
            quotients = [dict() for _ in range(m)]
            r = _reduce(s, basis, G._key, field, quotients)
            if r:
                raise IdealCalcError("syzygies need a Groebner basis: an S-pair did not reduce to zero")
            terms: TermDict = {}
            _axpy(terms, {(i, qi): ai}, field.neg(field.one), (0,) * G.ring.num_vars, field)
            _axpy(terms, {(j, qj): aj}, field.one, (0,) * G.ring.num_vars, field)
            for k, q in enumerate(quotients):
                for mono, c in q.items():
                    _axpy(terms, {(k, mono): c}, field.one, (0,) * G.ring.num_vars, field)
            out.append(VectorElement(G.ring, terms, m, twists, normalized=True))
    logger.debug("syzygies: %d elements -> %d Schreyer syzygies", m, len(out))
    return out


def schreyer_order(G: GroebnerBasis) -> SchreyerOrder:
    return SchreyerOrder(G.order, G.leads)


def syzygy_module(columns: Sequence[VectorElement], source_twists: Optional[Sequence[int]] = None,
                  minimal: bool = True, degree_guard: Optional[int] = None) -> List[VectorElement]:
    """
    Generators of the kernel of F' -> F sending e'_i to columns[i].

    Computed from a position-over-term basis of the graph {(columns[i], e'_i)}:
    basis elements with no F part span the kernel.
    """
    if not columns:
        return []
    ring, r = columns[0].ring, columns[0].rank
    target = list(columns[0].twists)
    m = len(columns)
    if source_twists is None:
        if any(c.is_zero() for c in columns):
            raise IdealCalcError("zero columns need explicit source twists")
        source_twists = [c.degree() for c in columns]
    source_twists = list(source_twists)
    twists = target + source_twists
    zero = (0,) * ring.num_vars
    graph = []
    for i, col in enumerate(columns):
        terms = dict(col.terms)
        terms[(r + i, zero)] = ring.field.one
        graph.append(VectorElement(ring, terms, r + m, twists, normalized=True))
    order = ModuleOrder(ring.order, PositionPolicy.POSITION_OVER_TERM, twists)
    G = buchberger(graph, order, degree_guard=degree_guard)
    kernel = []
    for g, (lead, _, _) in zip(G.elements, G._basis):
        if lead[0] >= r:
            kernel.append(VectorElement(ring, {(c - r, e): v for (c, e), v in g.terms.items()},
                                        m, source_twists, normalized=True))
    if minimal:
        kernel = minimal_generators(kernel)
    return kernel


def minimal_generators(elements: Sequence[Union[Polynomial, VectorElement]],
                       degree_guard: Optional[int] = None) -> List[VectorElement]:
    """
    A minimal generating subset, chosen degree by degree: an element is kept
    when its normal form modulo the lower-degree part is independent of the
    normal forms kept so far in its degree.
    """
    vectors = [v for v in _as_vectors(elements) if not v.is_zero()]
    if not vectors:
        return []
    ring, rank, twists = vectors[0].ring, vectors[0].rank, vectors[0].twists
    field = ring.field
    by_degree: Dict[int, List[VectorElement]] = {}
    for v in vectors:
        by_degree.setdefault(v.degree(), []).append(v)
    kept: List[VectorElement] = []
    order = ModuleOrder(ring.order, twists=twists)
    for d in sorted(by_degree):
        group = by_degree[d]
        if kept:
            G = buchberger(kept, order, degree_guard=degree_guard)
            forms = [normal_form(v, G) for v in group]
        else:
            forms = group
        index = sorted({t for v in forms for t in v.terms})
        position = {t: k for k, t in enumerate(index)}
        M = field.zeros((len(index), len(forms)))
        for col, v in enumerate(forms):
            for t, c in v.terms.items():
                M[position[t], col] = c
        _, pivots = rref(field, M)
        kept.extend(group[p] for p in pivots)
    return kept
