"""
Report Models

pydantic models for every machine-readable result the library produces.
``model_dump_json()`` gives the documented JSON shapes used by the CLI.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, computed_field


class ProfileReport(BaseModel):
    """Cycle-type profile: {"residues": [...], "counts": {"0": n0, ...}, "truncated": bool}."""

    residues: List[int]
    counts: Dict[str, int]
    lengths: Dict[str, int] = Field(default_factory=dict)
    truncated: bool = False


class RuleRowReport(BaseModel):
    """One (table row, intersection parity) entry of the combined-cycle rule check."""

    table: int
    i: int
    j: int
    parity: str
    expected: int
    got: int
    closed_form: int
    witness: str
    derived: bool = False
    passed: bool


class RuleTableReport(BaseModel):
    rows_printed: int
    rows_passed: int
    entries: List[RuleRowReport]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def all_passed(self) -> bool:
        return self.rows_passed == self.rows_printed and all(e.passed for e in self.entries)


class MembershipReport(BaseModel):
    eulerian: bool
    profile: ProfileReport
    target: List[int]
    member: bool


class GracefulReport(BaseModel):
    valid: bool
    violations: List[str] = Field(default_factory=list)


class LabelingDocument(BaseModel):
    """Labeling file: {"labels": {node: value}, "q": q}."""

    labels: Dict[str, int]
    q: int


class LayoutDocument(BaseModel):
    """G(t,s) grid: {"rows": 2t, "cols": s+1, "grid": [[node ids]]}."""

    rows: int
    cols: int
    grid: List[List[int]]


class TheoremReport(BaseModel):
    """
    Result of an exhaustive sweep.

    ``counterexamples`` holds serialized edge lists; an empty list means the
    sweep is consistent with the statement.
    """

    theorem: str
    statement: str
    n_min: int
    n_max: int
    degrees: List[int] = Field(default_factory=list)
    instances_examined: int = 0
    premise_matches: int = 0
    counterexamples: List[str] = Field(default_factory=list)
    work_units: int = 0
    anchors: Dict[str, Any] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdict(self) -> str:
        return "consistent with paper" if not self.counterexamples else "counterexample found"


class CommandReport(BaseModel):
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    result: Dict[str, Any] = Field(default_factory=dict)
    exit_status: int = 0
    error: Optional[str] = None
