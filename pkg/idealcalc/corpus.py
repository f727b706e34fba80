"""
Ideal files and the named-example corpus.

An ideal file is line oriented:

    # comment
    name skew_lines_p3
    ring x0 x1 x2 x3
    expect nu=4
    x0*x2
    x0*x3
    ...

The corpus directory holds *.ideal files and manifest.json, which records
provenance tags and named pair sets.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .cohomology import deficiency_module, is_quasi_buchsbaum
from .config import CORPUS_MANIFEST, CORPUS_PATH
from .errors import IdealCalcError, ParseError
from .field import Field
from .ideal import Ideal, codim, is_saturated, krull_dim
from .polynomial import PolynomialRing
from .resolution import alpha, depth_of_quotient, is_cohen_macaulay, nu, pd, quotient_resolution, regularity

logger = logging.getLogger(__name__)


def _parse_value(text: str) -> Any:
    lowered = text.strip().lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    try:
        return int(lowered)
    except ValueError:
        return text.strip()


@dataclass
class IdealFile:
    """Parsed ideal file: ring declaration, generators and expectations."""
    variables: List[str]
    generators: List[str]
    name: Optional[str] = None
    expect: Dict[str, Any] = field(default_factory=dict)
    path: Optional[str] = None

    @classmethod
    def parse(cls, text: str, path: Optional[str] = None) -> "IdealFile":
        variables: Optional[List[str]] = None
        generators: List[str] = []
        name = None
        expect: Dict[str, Any] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "ring":
                if variables is not None:
                    raise ParseError(f"line {lineno}: second ring declaration", raw)
                variables = rest.split()
            elif head == "name":
                name = rest.strip()
            elif head == "expect":
                for item in rest.split():
                    key, sep, value = item.partition("=")
                    if not sep:
                        raise ParseError(f"line {lineno}: expectation needs key=value", raw)
                    expect[key] = _parse_value(value)
            else:
                if variables is None:
                    raise ParseError(f"line {lineno}: generator before the ring declaration", raw)
                generators.append(line)
        if variables is None:
            raise ParseError("missing ring declaration", text)
        return cls(variables, generators, name, expect, path)

    @classmethod
    def load(cls, path: str) -> "IdealFile":
        with open(path, encoding="utf-8") as handle:
            parsed = cls.parse(handle.read(), path)
        if parsed.name is None:
            parsed.name = os.path.splitext(os.path.basename(path))[0]
        return parsed

    def to_ideal(self, field_: Optional[Field] = None) -> Ideal:
        ring = PolynomialRing(self.variables, field_)
        return Ideal(ring, [ring.parse(g) for g in self.generators], name=self.name)

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"name {self.name}")
        lines.append("ring " + " ".join(self.variables))
        if self.expect:
            items = " ".join(f"{k}={str(v).lower() if isinstance(v, bool) else v}" for k, v in sorted(self.expect.items()))
            lines.append(f"expect {items}")
        lines.extend(self.generators)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ideal(cls, I: Ideal, name: Optional[str] = None) -> "IdealFile":
        return cls(list(I.ring.var_names), I.to_strings(), name or I.name)


# =============================================================================
# CORPUS
# =============================================================================

class Corpus:
    """
    Named examples under a corpus directory.

    Usage:
        corpus = Corpus()
        I = corpus.ideal("skew_lines_p3")
    """

    def __init__(self, root: Optional[str] = None):
        self.root = root or _default_root()
        manifest_path = os.path.join(self.root, CORPUS_MANIFEST)
        if os.path.exists(manifest_path):
            with open(manifest_path, encoding="utf-8") as handle:
                self.manifest = json.load(handle)
        else:
            logger.warning("no corpus manifest at %s", manifest_path)
            self.manifest = {"ideals": {}, "pairs": {}}

    def names(self) -> List[str]:
        return sorted(self.manifest.get("ideals", {}))

    def entry(self, name: str) -> Dict[str, Any]:
        try:
            return self.manifest["ideals"][name]
        except KeyError:
            raise IdealCalcError(f"no corpus ideal named '{name}'") from None

    def file(self, name: str) -> IdealFile:
        entry = self.entry(name)
        parsed = IdealFile.load(os.path.join(self.root, entry.get("file", f"{name}.ideal")))
        parsed.name = name
        parsed.expect = {**parsed.expect, **entry.get("expect", {})}
        return parsed

    def ideal(self, name: str, field_: Optional[Field] = None) -> Ideal:
        return self.file(name).to_ideal(field_)

    def provenance(self, name: str) -> str:
        return self.entry(name).get("provenance", "derived")

    def pair_sets(self) -> Dict[str, List[List[str]]]:
        return dict(self.manifest.get("pairs", {}))

    def pairs(self, set_name: str) -> List[Tuple[str, str]]:
        sets = self.pair_sets()
        if set_name not in sets:
            raise IdealCalcError(f"no corpus pair set named '{set_name}'")
        return [tuple(p) for p in sets[set_name]]


def _default_root() -> str:
    if os.path.isabs(CORPUS_PATH) or os.path.isdir(CORPUS_PATH):
        return CORPUS_PATH
    return os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), CORPUS_PATH)


def resolve_ideal_file(spec: str, corpus: Optional[Corpus] = None) -> IdealFile:
    """A path to an ideal file, or the name of a corpus entry."""
    if os.path.exists(spec):
        return IdealFile.load(spec)
    corpus = corpus or Corpus()
    return corpus.file(spec)


# =============================================================================
# INVARIANTS
# =============================================================================

def invariants(I: Ideal) -> Dict[str, Any]:
    """Every numerical invariant reported for a single ideal."""
    n = I.ring.num_vars - 1
    d = krull_dim(I) - 1
    saturated = is_saturated(I)
    out: Dict[str, Any] = {
        "numVars": I.ring.num_vars,
        "krullDim": krull_dim(I),
        "codim": codim(I),
        "degree": I.degree(),
        "hilbertSeries": I.hilbert_series().to_dict(),
        "saturated": saturated,
    }
    if I.is_zero() or I.is_unit():
        return out
    resolution = quotient_resolution(I)
    out.update({
        "nu": nu(I),
        "alpha": alpha(I),
        "betti": resolution.betti().to_dict(),
        "pd": pd(I),
        "depth": depth_of_quotient(I),
        "regularity": regularity(I),
        "cohenMacaulay": is_cohen_macaulay(I),
    })
    if saturated and d >= 1 and n >= 2:
        modules = {i: deficiency_module(I, i) for i in range(1, min(d, n - 1) + 1)}
        out["deficiency"] = {str(i): dict(M.to_dict(), index=i) for i, M in modules.items()}
        out["quasiBuchsbaum"] = is_quasi_buchsbaum(I).holds
    return out


def flat_invariants(inv: Dict[str, Any]) -> Dict[str, Any]:
    """Scalar view used by file expectations: h<i> is the total dim of H^i_*."""
    flat = {k: v for k, v in inv.items() if not isinstance(v, dict)}
    for i, module in inv.get("deficiency", {}).items():
        flat[f"h{i}"] = module["total"]
    return flat


def check_expectations(parsed: IdealFile, field_: Optional[Field] = None) -> Dict[str, Any]:
    """Compare the expectations of a file with computed values."""
    computed = flat_invariants(invariants(parsed.to_ideal(field_)))
    mismatches = {}
    for key, expected in sorted(parsed.expect.items()):
        actual = computed.get(key, 0 if key.startswith("h") and key[1:].isdigit() else None)
        if actual != expected:
            mismatches[key] = {"expected": expected, "computed": actual}
    return {"name": parsed.name, "checked": sorted(parsed.expect), "mismatches": mismatches}
