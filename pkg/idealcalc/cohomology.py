"""
Ext by dualizing resolutions, deficiency modules by local duality, graded
Tor and the comparison module (I ∩ J) / IJ.

Degree convention: H^i_*(V)_j is H^i(P^n, I_V(j)) for the ideal sheaf I_V,
computed as the dual of Ext^{N-1-i}_S(I, S) in degree -j - N, where N is
the number of variables. See docs/conventions.md.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import config
from .errors import IdealCalcError, NotDisjointError, PreconditionError, UncertifiedWindowError
from .groebner import TermDict, VectorElement, syzygy_module
from .ideal import Ideal, ideal_intersect, ideal_product, is_saturated, krull_dim, meet_dimension
from .modules import FiniteGradedModule, GradedModulePresentation, Window, subquotient, to_finite
from .resolution import FreeResolution, minimal_resolution, quotient_resolution, regularity

logger = logging.getLogger(__name__)


def present_quotient(I: Ideal) -> GradedModulePresentation:
    """S/I as the cokernel of S(-d_1) + ... -> S."""
    return GradedModulePresentation(I.ring, [0], [VectorElement.from_polynomial(g) for g in I.generators])


# =============================================================================
# EXT
# =============================================================================

def _transpose(cols: List[TermDict], source_rank: int) -> List[TermDict]:
    """Columns of phi^T from the columns of phi: F_{j-1} has source_rank generators."""
    out: List[TermDict] = [dict() for _ in range(source_rank)]
    for c, col in enumerate(cols):
        for (i, e), v in col.items():
            out[i][(c, e)] = v
    return out


def dual_homology(R: FreeResolution, k: int) -> GradedModulePresentation:
    """
    H^k of Hom(R, S): ker(phi_{k+1}^T) / im(phi_k^T) inside F_k^*, whose
    generators sit in degrees -twists[k].
    """
    ring = R.ring
    if k < 0 or k >= len(R.twists) or not R.twists[k]:
        return GradedModulePresentation(ring, [], [])
    here = [-a for a in R.twists[k]]
    rank_here = len(here)
    if k < len(R.maps) and R.twists[k + 1]:
        there = [-a for a in R.twists[k + 1]]
        columns = [VectorElement(ring, col, len(there), there, normalized=True)
                   for col in _transpose(R.maps[k], rank_here)]
        kernel = syzygy_module(columns, here)
    else:
        kernel = [VectorElement.basis_vector(ring, c, rank_here, here) for c in range(rank_here)]
    boundary: List[VectorElement] = []
    if k >= 1:
        boundary = [VectorElement(ring, col, rank_here, here, normalized=True)
                    for col in _transpose(R.maps[k - 1], len(R.twists[k - 1]))]
    return subquotient(kernel, boundary, ring)


def ext(I: Ideal, k: int) -> GradedModulePresentation:
    """Ext^k_S(S/I, S)."""
    key = ("ext", k)
    if key not in I._cache:
        I._cache[key] = dual_homology(quotient_resolution(I), k)
    return I._cache[key]


def ext_ideal(I: Ideal, k: int) -> GradedModulePresentation:
    """Ext^k_S(I, S); Ext^0 is Hom(I, S)."""
    key = ("ext_ideal", k)
    if key not in I._cache:
        I._cache[key] = dual_homology(minimal_resolution(I), k)
    return I._cache[key]


# =============================================================================
# DEFICIENCY MODULES
# =============================================================================

def default_window(I: Ideal, padding: Optional[int] = None) -> Window:
    """[-reg - n - 2, reg + 2] for the regularity of I, widened by padding."""
    pad = config.WINDOW_PADDING if padding is None else padding
    reg = regularity(I)
    n = I.ring.num_vars - 1
    return (-reg - n - 2 - pad, reg + 2 + pad)


def _dual_of_ext(E: GradedModulePresentation, N: int, window: Optional[Window]) -> FiniteGradedModule:
    """Graded dual with shift N; window is given in the degrees of the dual."""
    if window is None:
        dual = to_finite(E).dual(N)
    else:
        lo, hi = window
        dual = to_finite(E, (-hi - N, -lo - N)).dual(N)
    return dual


def _check_saturated(I: Ideal) -> None:
    if not is_saturated(I):
        raise PreconditionError("the ideal is not saturated")


def deficiency_module(I: Ideal, i: int, window: Optional[Window] = None) -> FiniteGradedModule:
    """
    H^i_*(V) for 1 <= i <= n - 1, V = Proj(S/I) in P^n.

    Certified when the dual Ext module has finite length; otherwise it is
    computed on `window` (default: default_window) and left uncertified.

    Raises:
        IdealCalcError: i outside [1, n - 1]
        PreconditionError: I not saturated
    """
    n = I.ring.num_vars - 1
    if not 1 <= i <= n - 1:
        raise IdealCalcError(f"cohomological index {i} outside [1, {n - 1}]")
    _check_saturated(I)
    key = ("deficiency", i, tuple(window) if window else None)
    if key in I._cache:
        return I._cache[key]
    E = ext_ideal(I, n - i)
    if E.is_finite():
        module = _dual_of_ext(E, n + 1, None)
    else:
        if window is None:
            window = default_window(I)
        logger.warning("H^%d_* is not of finite length; truncated to [%d, %d]", i, *window)
        module = _dual_of_ext(E, n + 1, window)
    logger.debug("H^%d_* dims %s (certified=%s)", i, module.dims(), module.certified)
    I._cache[key] = module
    return module


def top_cohomology_window(I: Ideal, window: Optional[Window] = None) -> FiniteGradedModule:
    """
    H^{d+1}_*(V), d = dim V, truncated to a window. The module is never of
    finite length, so the result is always uncertified.
    """
    n = I.ring.num_vars - 1
    d = krull_dim(I) - 1
    if d < 0 or d + 1 > n:
        raise IdealCalcError(f"no top cohomology for a subscheme of dimension {d} in P^{n}")
    _check_saturated(I)
    if window is None:
        window = default_window(I)
    key = ("top", tuple(window))
    if key not in I._cache:
        module = _dual_of_ext(ext_ideal(I, n - d - 1), n + 1, window)
        module.certified = False
        I._cache[key] = module
    return I._cache[key]


# =============================================================================
# QUASI-BUCHSBAUM
# =============================================================================

@dataclass
class QuasiBuchsbaumResult:
    holds: bool
    modules: Dict[int, FiniteGradedModule] = field(default_factory=dict)
    failing: List[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, object]:
        return {
            "quasiBuchsbaum": self.holds,
            "failing": self.failing,
            "modules": {str(i): dict(m.to_dict(), index=i) for i, m in sorted(self.modules.items())},
        }


def is_quasi_buchsbaum(I: Ideal) -> QuasiBuchsbaumResult:
    """Every variable acts as zero on H^i_*(V) for i = 1, ..., dim V."""
    d = krull_dim(I) - 1
    n = I.ring.num_vars - 1
    modules: Dict[int, FiniteGradedModule] = {}
    failing = []
    for i in range(1, min(d, n - 1) + 1):
        M = deficiency_module(I, i)
        modules[i] = M
        if not M.is_annihilated_by_maximal_ideal():
            failing.append(i)
    return QuasiBuchsbaumResult(not failing, modules, failing)


# =============================================================================
# TOR AND THE COMPARISON MODULE
# =============================================================================

def tor_presentation(I: Ideal, J: Ideal, i: int) -> GradedModulePresentation:
    """
    Tor_i(S/I, S/J) from the minimal resolution G of S/J: cycles of G ⊗ S/I
    are v in G_i with psi_i(v) in I G_{i-1}, boundaries im psi_{i+1} + I G_i.
    """
    ring = I.ring
    G = quotient_resolution(J)
    if i < 0 or i >= len(G.twists) or not G.twists[i]:
        return GradedModulePresentation(ring, [], [])
    here = G.twists[i]
    gens = [g for g in I.generators if not g.is_zero()]

    def ideal_multiples(twists: List[int]) -> List[VectorElement]:
        return [VectorElement(ring, {(m, e): v for e, v in f.term_dict.items()}, len(twists), twists,
                              normalized=True)
                for m in range(len(twists)) for f in gens]

    if i == 0:
        cycles = [VectorElement.basis_vector(ring, c, len(here), here) for c in range(len(here))]
    else:
        below = G.twists[i - 1]
        columns = G.columns(i) + ideal_multiples(below)
        sources = list(here) + [f.degree() + a for a in below for f in gens]
        cycles = []
        for s in syzygy_module(columns, sources):
            projected = {(c, e): v for (c, e), v in s.terms.items() if c < len(here)}
            if projected:
                cycles.append(VectorElement(ring, projected, len(here), here, normalized=True))
    boundaries = ideal_multiples(here)
    if i + 1 < len(G.twists) and G.twists[i + 1]:
        boundaries += G.columns(i + 1)
    return subquotient(cycles, boundaries, ring)


def tor(I: Ideal, J: Ideal, i: int, window: Optional[Window] = None) -> FiniteGradedModule:
    """
    Tor_i^S(S/I, S/J) as a finite graded module. Indices outside
    [0, numVars] give the zero module. Taken for the ideals as given; no
    saturation is required.
    """
    ring = I.ring
    if i < 0 or i > ring.num_vars:
        return FiniteGradedModule.zero(ring)
    P = tor_presentation(I, J, i)
    if P.is_finite():
        return to_finite(P, window) if window is not None else to_finite(P)
    if window is None:
        window = (0, regularity(I) + regularity(J) + ring.num_vars)
    return to_finite(P, window)


def comparison_presentation(I: Ideal, J: Ideal) -> GradedModulePresentation:
    """(I ∩ J) / IJ inside S."""
    meet = ideal_intersect(I, J)
    product = ideal_product(I, J)
    return subquotient([VectorElement.from_polynomial(g) for g in meet.generators if not g.is_zero()],
                       [VectorElement.from_polynomial(g) for g in product.generators if not g.is_zero()],
                       I.ring)


def comparison_module(I: Ideal, J: Ideal) -> FiniteGradedModule:
    """
    (I ∩ J) / IJ for ideals of disjoint subschemes; it has finite length.

    Raises:
        PreconditionError: I or J not saturated
        NotDisjointError: V(I) and V(J) meet
    """
    _check_saturated(I)
    _check_saturated(J)
    dim = meet_dimension(I, J)
    if dim > 0:
        raise NotDisjointError(dim)
    P = comparison_presentation(I, J)
    if not P.is_finite():
        raise UncertifiedWindowError("comparison module is not of finite length")
    return to_finite(P)
