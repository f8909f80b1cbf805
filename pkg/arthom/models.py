"""Pydantic models for reports, requests and caps"""
from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Any, Union, Literal
from datetime import datetime
from enum import Enum


# Enums
class PropertyName(str, Enum):
    ALMOST_PRECLUSTER = "almost-precluster"
    PRECLUSTER = "precluster"
    ALMOST_CLUSTER = "almost-cluster"
    F_COTILTING = "f-cotilting"


class TranslateKind(str, Enum):
    TAU = "tau"
    TAU_INVERSE = "tau-"
    TAU_N = "tau_n"
    TAU_N_INVERSE = "tau_n-"


class ResolutionKindName(str, Enum):
    PROJECTIVE = "projective"
    INJECTIVE = "injective"


class FunctorSide(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


class EvalDirection(str, Enum):
    ALGEBRA = "algebra"            # A -> End_Λ(Hom_A(A, M))
    ENDOMORPHISM = "endomorphism"  # Λ -> End_A(Hom_Λ(Λ, I))


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


# Caps
class Caps(BaseModel):
    """Upper bounds for every potentially unbounded computation"""
    resolution: int = Field(32, gt=0)
    enumeration: int = Field(512, gt=0)
    path_length: int = Field(64, gt=0)
    codim: int = Field(8, gt=0)
    dimension: int = Field(64, gt=0)

    model_config = {"frozen": True}


# Report Models
class Condition(BaseModel):
    label: str
    ok: bool
    detail: str
    certificate: str = ""


class ClassifierReport(BaseModel):
    verdict: Union[bool, Literal["unknown"]]
    reason: Optional[str] = None
    conditions: List[Condition] = []
    parameters: Dict[str, Any] = {}
    findings: Dict[str, Any] = {}
    timings: Dict[str, float] = {}
    digest: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.verdict == "unknown":
            return 2
        return 0 if self.verdict else 1


class Assertion(BaseModel):
    label: str
    expected: Any
    actual: Any
    ok: bool
    entry_hash: str = ""
    previous_hash: str = "GENESIS"


class FixtureReport(BaseModel):
    name: str
    ok: bool
    assertions: List[Assertion]
    timings: Dict[str, float] = {}
    digest: Optional[str] = None


# Request Models
class CommandRequest(BaseModel):
    """One CLI invocation; ``modules`` maps flag names to module names, ``options`` holds the rest"""
    subcommand: str
    input_path: Optional[str] = None
    modules: Dict[str, str] = {}
    n: Optional[int] = Field(None, ge=0)
    m: Optional[int] = Field(None, ge=0)
    caps: Optional[Caps] = None
    output_format: OutputFormat = OutputFormat.TEXT
    options: Dict[str, Any] = {}


class ClassifyRequest(BaseModel):
    algebra: str = Field(..., description="Algebra file contents")
    n: int = Field(..., ge=0)


class CheckRequest(BaseModel):
    algebra: str = Field(..., description="Algebra file contents")
    module: str = Field(..., description="Name of a module declared in the algebra file")
    property: PropertyName
    n: int = Field(..., ge=1)


class DomdimRequest(BaseModel):
    algebra: str
    relative: Optional[str] = Field(None, description="Injective module name; classical domdim when absent")


class DomdimResponse(BaseModel):
    value: Optional[int]
    infinite: bool
    cap: Optional[int] = None
    relative: Optional[str] = None


class HealthResponse(BaseModel):
    status: str
    version: str
    timestamp: datetime
    fixtures: List[str]
