"""
Verification report dataclass shared by every theorem verifier.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .config import Verdict


@dataclass
class VerificationReport:
    """Outcome of checking one theorem on one instance."""
    theorem_id: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    quantities: Dict[str, Any] = field(default_factory=dict)
    verdict: Verdict = Verdict.NOT_APPLICABLE
    witness: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "theoremId": self.theorem_id,
            "inputs": self.inputs,
            "quantities": self.quantities,
            "verdict": self.verdict.value,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        return cls(
            theorem_id=data["theoremId"],
            inputs=data.get("inputs", {}),
            quantities=data.get("quantities", {}),
            verdict=Verdict(data["verdict"]),
            witness=data.get("witness"),
            notes=list(data.get("notes", [])),
        )

    def to_string(self) -> str:
        """Readable summary for the text output format."""
        lines = [f"{self.theorem_id}: {self.verdict.value}"]
        names = [d.get("name") or d.get("generators") for d in self.inputs.get("ideals", [])]
        if names:
            lines.append(f"  inputs: {', '.join(str(n) for n in names)}")
        if self.inputs.get("seeds"):
            lines.append(f"  seeds: {self.inputs['seeds']}")
        for key in sorted(self.quantities):
            lines.append(f"  {key}: {self.quantities[key]}")
        if self.witness:
            lines.append(f"  witness: {json.dumps(self.witness, sort_keys=True)}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def describe_ideal(I) -> Dict[str, Any]:
    """Name, ring and generators of an ideal, as recorded in report inputs."""
    out: Dict[str, Any] = {
        "ring": list(I.ring.var_names),
        "generators": I.to_strings(),
    }
    if getattr(I, "name", None):
        out["name"] = I.name
    return out


def make_inputs(ideals: Sequence, seeds: Sequence[int] = (), prime: Optional[int] = None) -> Dict[str, Any]:
    if prime is None and ideals:
        prime = ideals[0].ring.field.characteristic
    return {"ideals": [describe_ideal(I) for I in ideals], "seeds": list(seeds), "prime": prime}
