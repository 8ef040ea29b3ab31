"""Typed input and output models for gates, networks and reports."""
from __future__ import annotations

from enum import Enum
from typing import Annotated, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ProbabilityInterval(BaseModel):
    """Bounds [lower, upper] on a link probability."""

    model_config = ConfigDict(frozen=True)

    lower: float = Field(..., ge=0.0, le=1.0)
    upper: float = Field(..., ge=0.0, le=1.0)

    @model_validator(mode="after")
    def check_order(self) -> "ProbabilityInterval":
        if self.lower > self.upper:
            raise ValueError(f"interval lower bound {self.lower} exceeds upper bound {self.upper}")
        return self

    @classmethod
    def point(cls, p: float) -> "ProbabilityInterval":
        return cls(lower=p, upper=p)

    @classmethod
    def parse(cls, raw) -> "ProbabilityInterval":
        """Accept ``0.7``, ``"0.6:0.8"``, ``[0.6, 0.8]`` or a lower/upper mapping."""
        if isinstance(raw, ProbabilityInterval):
            return raw
        if isinstance(raw, dict):
            return cls(**raw)
        if isinstance(raw, (list, tuple)):
            if len(raw) != 2:
                raise ValueError(f"interval needs exactly two bounds, got {list(raw)}")
            return cls(lower=float(raw[0]), upper=float(raw[1]))
        if isinstance(raw, str) and ":" in raw:
            lo, hi = raw.split(":", 1)
            return cls(lower=float(lo), upper=float(hi))
        return cls.point(float(raw))

    @property
    def is_degenerate(self) -> bool:
        return self.lower == self.upper

    @property
    def midpoint(self) -> float:
        return (self.lower + self.upper) / 2.0

    def __str__(self) -> str:
        if self.is_degenerate:
            return f"{self.lower:g}"
        return f"{self.lower:g}:{self.upper:g}"


class GateVariant(str, Enum):
    """Noisy-OR family members; values double as CLI names."""

    NOR = "nor"
    IMNOR = "imnor"
    LC_BNOR = "lc"
    PBNOR = "pbnor"
    OBNOR = "obnor"
    TBNOR = "tbnor"
    OCBNOR = "oc"

    @property
    def label(self) -> str:
        return {
            "nor": "NOR",
            "imnor": "ImNOR",
            "lc": "LC-BNOR",
            "pbnor": "PBNOR",
            "obnor": "OBNOR",
            "tbnor": "TBNOR",
            "oc": "OCBNOR",
        }[self.value]


# Members of the optimistic-coefficient family with a fixed coefficient.
FIXED_COEFFICIENTS: Dict[GateVariant, float] = {
    GateVariant.OBNOR: 1.0,
    GateVariant.PBNOR: 0.0,
    GateVariant.TBNOR: 0.5,
}


class GateSpec(BaseModel):
    """Gate variant, one link interval per parent and the parents' ignorance masses."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    variant: GateVariant
    links: List[ProbabilityInterval] = Field(..., min_length=1)
    parent_ignorance: List[float] = Field(default_factory=list)
    optimism: Optional[float] = Field(None, ge=0.0, le=1.0, alias="lambda")

    @field_validator("links", mode="before")
    @classmethod
    def parse_links(cls, value):
        return [ProbabilityInterval.parse(item) for item in value]

    @field_validator("parent_ignorance")
    @classmethod
    def check_ignorance(cls, value: List[float]) -> List[float]:
        for eta in value:
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"parent ignorance must lie in [0, 1], got {eta}")
        return value

    @model_validator(mode="before")
    @classmethod
    def default_ignorance(cls, data):
        if isinstance(data, dict) and not data.get("parent_ignorance") and data.get("links"):
            data = dict(data)
            data["parent_ignorance"] = [0.0] * len(data["links"])
        return data

    @model_validator(mode="after")
    def check_shape(self) -> "GateSpec":
        if len(self.parent_ignorance) != len(self.links):
            raise ValueError(
                f"parent_ignorance has {len(self.parent_ignorance)} entries for {len(self.links)} links"
            )
        if self.variant is GateVariant.OCBNOR and self.optimism is None:
            raise ValueError("the oc variant requires an optimism coefficient (lambda)")
        return self

    @property
    def arity(self) -> int:
        return len(self.links)

    @property
    def coefficient(self) -> Optional[float]:
        """Effective optimism coefficient for the OCBNOR family, else None."""
        if self.variant in FIXED_COEFFICIENTS:
            return FIXED_COEFFICIENTS[self.variant]
        if self.variant is GateVariant.OCBNOR:
            return self.optimism
        return None

    def with_ignorance(self, etas: List[float]) -> "GateSpec":
        return self.model_copy(update={"parent_ignorance": list(etas)})


class BeliefReport(BaseModel):
    """Credal and pignistic summary of a binary mass function."""

    mass: Tuple[float, float, float]
    bel_T: float
    pl_T: float
    bel_F: float
    pl_F: float
    betp_T: float
    betp_F: float


UnitMass = Annotated[float, Field(ge=0.0, le=1.0, allow_inf_nan=False)]


class NodeSpec(BaseModel):
    """One node of an evidential network file."""

    id: str
    prior: Optional[Tuple[UnitMass, UnitMass, UnitMass]] = None
    parents: List[str] = Field(default_factory=list)
    gate: Optional[GateSpec] = None

    @model_validator(mode="after")
    def check_kind(self) -> "NodeSpec":
        if (self.prior is None) == (self.gate is None):
            raise ValueError(f"node {self.id} needs exactly one of 'prior' or 'gate'")
        if self.prior is not None and self.parents:
            raise ValueError(f"root node {self.id} cannot declare parents")
        return self


class EvidentialNetworkFile(BaseModel):
    nodes: List[NodeSpec] = Field(..., min_length=1)


class EdgeSpec(BaseModel):
    """Directed edge with its working probability data."""

    model_config = ConfigDict(populate_by_name=True)

    id: str
    from_node: str = Field(..., alias="from")
    to_node: str = Field(..., alias="to")
    prob: Optional[float] = Field(None, ge=0.0, le=1.0)
    interval: Optional[ProbabilityInterval] = None
    rate: Optional[float] = Field(None, ge=0.0)

    @field_validator("interval", mode="before")
    @classmethod
    def parse_interval(cls, value):
        if value is None:
            return value
        return ProbabilityInterval.parse(value)

    @model_validator(mode="after")
    def check_data(self) -> "EdgeSpec":
        if self.prob is None and self.interval is None and self.rate is None:
            raise ValueError(f"edge {self.id} needs one of 'prob', 'interval' or 'rate'")
        if self.from_node == self.to_node:
            raise ValueError(f"edge {self.id} is a self-loop on {self.from_node}")
        return self


class ReliabilityNetwork(BaseModel):
    """Directed network G(N, E) with a source and a sink."""

    nodes: List[str] = Field(default_factory=list)
    edges: List[EdgeSpec] = Field(..., min_length=1)
    source: str
    sink: str
    mission_time: Optional[float] = Field(None, ge=0.0)

    @model_validator(mode="after")
    def check_structure(self) -> "ReliabilityNetwork":
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("node ids must be unique")
        edge_ids = [edge.id for edge in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise ValueError("edge ids must be unique")
        if self.nodes:
            known = set(self.nodes)
            for edge in self.edges:
                for endpoint in (edge.from_node, edge.to_node):
                    if endpoint not in known:
                        raise ValueError(f"edge {edge.id} references unknown node {endpoint}")
            for terminal in (self.source, self.sink):
                if terminal not in known:
                    raise ValueError(f"terminal {terminal} is not a declared node")
        for edge in self.edges:
            if edge.prob is None and edge.interval is None and self.mission_time is None:
                raise ValueError(f"edge {edge.id} gives only a rate; mission_time is required")
        return self

    @property
    def node_ids(self) -> List[str]:
        """Declared nodes, or nodes in order of first appearance on the edges."""
        if self.nodes:
            return list(self.nodes)
        seen: List[str] = []
        for name in [self.source] + [n for e in self.edges for n in (e.from_node, e.to_node)] + [self.sink]:
            if name not in seen:
                seen.append(name)
        return seen


class ReliabilityReport(BaseModel):
    """Belief mass of the system state S with its bounds."""

    mass: Tuple[float, float, float]
    bel_working: float
    pl_working: float
    betp_working: float
    variant: GateVariant
    coefficient: Optional[float] = None
    oracle_reliability: Optional[float] = None

    @property
    def label(self) -> str:
        if self.variant is GateVariant.OCBNOR:
            return f"OCBNOR(lambda={self.coefficient:g})"
        return self.variant.label
