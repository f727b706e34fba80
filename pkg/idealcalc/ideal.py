"""
Ideal - homogeneous ideals and the ideal calculus: sums, products,
intersections, quotients, saturation, Hilbert series and dimension.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence

from .config import ELIMINATION_VARIABLE
from .errors import InhomogeneousInputError, RingMismatchError
from .field import Field
from .groebner import GroebnerBasis, buchberger, eliminate, normal_form
from .hilbert import HilbertSeries, monomial_numerator
from .linear_change import LinearChange, apply_change
from .polynomial import MonomialOrder, Polynomial, PolynomialRing

logger = logging.getLogger(__name__)


class Ideal:
    """
    Homogeneous ideal of a polynomial ring.

    Equality is equality of reduced Groebner bases. Derived data (Groebner
    basis, Hilbert series, resolutions) is cached on the value; every cached
    entry is a deterministic function of the generators.

    Usage:
        S = PolynomialRing.standard(4)
        I = Ideal.parse(S, ["x0*x2", "x0*x3", "x1*x2", "x1*x3"])
        I.krull_dim()  # -> 2
    """

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = (),
                 check_homogeneous: bool = True, name: Optional[str] = None):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {ring}")
            if not g.is_zero():
                gens.append(g)
        if check_homogeneous:
            for g in gens:
                if not g.is_homogeneous():
                    raise InhomogeneousInputError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.generators = tuple(gens)
        self.name = name
        self._cache: Dict[object, object] = {}

    # ====== constructors ======

    @classmethod
    def parse(cls, ring: PolynomialRing, texts: Sequence[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def zero(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def unit(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, ring.gens())

    @classmethod
    def power(cls, base: "Ideal", k: int) -> "Ideal":
        result = cls.unit(base.ring)
        for _ in range(k):
            result = ideal_product(result, base)
        return result

    # ====== groebner ======

    def groebner(self, degree_guard: Optional[int] = None) -> GroebnerBasis:
        if "gb" not in self._cache:
            self._cache["gb"] = buchberger(self.generators, self.ring.order, ring=self.ring,
                                           degree_guard=degree_guard)
        return self._cache["gb"]

    def reduced_generators(self) -> List[Polynomial]:
        return self.groebner().polynomials()

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.reduced_generators())

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        return normal_form(f, self.groebner()).is_zero()

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner().same_module(other.groebner())

    def __hash__(self) -> int:
        return hash(tuple(self.reduced_generators()))

    # ====== calculus ======

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def intersect(self, other: "Ideal") -> "Ideal":
        return ideal_intersect(self, other)

    def quotient(self, other: "Ideal") -> "Ideal":
        return ideal_quotient(self, other)

    def saturate(self, other: Optional["Ideal"] = None) -> "Ideal":
        return saturate(self, other)

    def is_saturated(self) -> bool:
        return is_saturated(self)

    # ====== numerical invariants ======

    def hilbert_series(self) -> HilbertSeries:
        return hilbert_series(self)

    def krull_dim(self) -> int:
        return krull_dim(self)

    def codim(self) -> int:
        return codim(self)

    def degree(self) -> int:
        return self.hilbert_series().degree()

    # ====== changes of ring ======

    def over_field(self, field: Field) -> "Ideal":
        ring = self.ring.with_field(field)
        return Ideal(ring, [g.lift(ring) for g in self.generators], name=self.name)

    def apply_change(self, change: LinearChange) -> "Ideal":
        return Ideal(self.ring, [apply_change(g, change) for g in self.generators], name=self.name)

    def to_strings(self) -> List[str]:
        return [str(g) for g in self.generators]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


def ideal_intersect(I: Ideal, J: Ideal, degree_guard: Optional[int] = None) -> Ideal:
    """
    I ∩ J as the t-free part of t*I + (1 - t)*J under an order eliminating t.
    """
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    name = ring.fresh_name(ELIMINATION_VARIABLE)
    order = MonomialOrder.elimination(1)
    T = ring.with_prepended([name], order)
    gens = []
    for f in I.generators:
        gens.append(f.map_terms(T, lambda e: (1,) + e))
    for g in J.generators:
        gens.append(g.map_terms(T, lambda e: (0,) + e) - g.map_terms(T, lambda e: (1,) + e))
    G = buchberger(gens, order, homogeneous_only=False, degree_guard=degree_guard)
    E = eliminate(G, 1)
    result = [p.to_polynomial().map_terms(ring, lambda e: e[1:]) for p in E]
    logger.debug("intersection: %d + %d generators -> %d", len(I.generators), len(J.generators), len(result))
    return Ideal(ring, result)


def ideal_quotient(I: Ideal, J: Ideal, degree_guard: Optional[int] = None) -> Ideal:
    """(I : J) = ∩_g (I : g), with (I : g) = (I ∩ (g)) / g."""
    _same_ring(I, J)
    ring = I.ring
    if J.is_zero():
        return Ideal.unit(ring)
    result: Optional[Ideal] = None
    for g in J.generators:
        if I.contains(g):
            part = Ideal.unit(ring)
        else:
            meet = ideal_intersect(I, Ideal(ring, [g]), degree_guard)
            part = Ideal(ring, [h.divide_exact(g) for h in meet.generators])
        result = part if result is None else ideal_intersect(result, part, degree_guard)
    return result


def saturate(I: Ideal, J: Optional[Ideal] = None, degree_guard: Optional[int] = None) -> Ideal:
    """(I : J^∞), J the irrelevant ideal by default."""
    J = J if J is not None else Ideal.maximal(I.ring)
    current = I
    steps = 0
    while True:
        if current.is_unit():
            return current
        nxt = ideal_quotient(current, J, degree_guard)
        steps += 1
        if nxt == current:
            logger.debug("saturation stabilized after %d quotient steps", steps)
            return current
        current = nxt


def is_saturated(I: Ideal) -> bool:
    if "saturated" not in I._cache:
        I._cache["saturated"] = I.is_unit() or ideal_quotient(I, Ideal.maximal(I.ring)) == I
    return I._cache["saturated"]


def hilbert_series(I: Ideal) -> HilbertSeries:
    """Hilbert series of S/I from the initial ideal."""
    if "hilbert" not in I._cache:
        leads = [e for _, e in I.groebner().leads]
        numerator = monomial_numerator(leads, I.ring.num_vars)
        I._cache["hilbert"] = HilbertSeries(tuple(numerator), I.ring.num_vars)
    return I._cache["hilbert"]


def krull_dim(I: Ideal) -> int:
    """dim S/I; -1 for the unit ideal."""
    return hilbert_series(I).krull_dim()


def codim(I: Ideal) -> int:
    return I.ring.num_vars - krull_dim(I)


def meet_dimension(I: Ideal, J: Ideal) -> int:
    """dim S/(I+J); the subschemes are disjoint iff this is at most 0."""
    return krull_dim(ideal_sum(I, J))


def are_disjoint(I: Ideal, J: Ideal) -> bool:
    return meet_dimension(I, J) <= 0
