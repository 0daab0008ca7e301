# -*- coding: utf-8 -*-
"""
Pydantic V2 models of the analysis report and of the command-line run.
Exact values travel as strings ("-1819/663552", "25/16*sqrt(2)") so that a
JSON round trip is lossless; display strings sit next to them where rounding
is involved.
"""

import logging
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

try:
    from .exactnum import parse_rational
    from .exceptions import NumberFormatError
    from .utils import parse_param_assignments
except ImportError:
    from exactnum import parse_rational
    from exceptions import NumberFormatError
    from utils import parse_param_assignments

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


# --- Report pieces ---

class SystemEcho(BaseModel):
    """The analysed system as it was read."""
    name: str = Field(default="", description="Builtin name or file label.")
    variables: List[str] = Field(..., description="Dependent variables, in equation order.")
    equations: List[str] = Field(..., description="Equations in implicit form P = 0.")
    parameters: Dict[str, str] = Field(default={}, description="Exact values of lambda and C when known.")
    substitution: Optional[List[str]] = Field(default=None, description="[original, new] when new = original^2 was applied.")


class BalanceModel(BaseModel):
    label: str = Field(..., description="Leading behaviour, e.g. 'x~t^-2, y~t^-2'.")
    exponents: Dict[str, str] = Field(..., description="Leading exponent per variable.")
    leading: Dict[str, str] = Field(..., description="Leading coefficient per variable (exact, ARBITRARY or UNRESOLVED).")
    status: str = Field(..., description="RESOLVED or UNRESOLVED.")
    note: str = Field(default="")


class ResonanceRootModel(BaseModel):
    value: str = Field(..., description="Exact root, or a BigFloat string when no exact form was found.")
    multiplicity: int = Field(default=1, ge=1)
    exact: bool = Field(default=True)
    classification: str = Field(..., description="INTEGER, RATIONAL_NONINT, IRRATIONAL or COMPLEX.")


class ResonanceModel(BaseModel):
    balance: str = Field(..., description="Label of the balance the roots belong to.")
    determinant: str = Field(..., description="det Q(r) as a polynomial in r.")
    roots: List[ResonanceRootModel] = Field(default=[])
    diagnostics: List[str] = Field(default=[])


class VerdictModel(BaseModel):
    status: Literal["PASSES", "WEAK", "FAILS"] = Field(..., description="Painlevé verdict.")
    reasons: List[str] = Field(default=[], description="Why the verdict is not a clean PASSES.")


class SeriesTermModel(BaseModel):
    power: int
    coefficient: str


class ConstraintModel(BaseModel):
    step: int = Field(..., ge=1)
    constraints: List[str] = Field(default=[])
    resolution: str


class ParameterModel(BaseModel):
    name: str
    step: int = Field(..., ge=0, description="Recursion step where the parameter entered.")
    variable: str
    power: int = Field(..., description="Power of t it multiplies.")


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class BranchModel(BaseModel):
    """One consistent resolution of every compatibility condition."""
    id: str
    status: str = Field(..., description="OK, LOG_REQUIRED or UNRESOLVED.")
    mode: str = Field(default="SYMBOLIC")
    order: int = Field(..., ge=0, description="Last recursion step carried out.")
    a1: Optional[str] = Field(default=None, description="Value fixed for an ARBITRARY leading coefficient, if any.")
    series: Dict[str, List[SeriesTermModel]] = Field(default={}, description="Exact coefficients per variable, powers ascending.")
    evaluated: Dict[str, List[SeriesTermModel]] = Field(default={}, description="Coefficients with parameter values substituted.")
    parameters: List[ParameterModel] = Field(default=[], description="Free parameters left in the series.")
    fixed: Dict[str, str] = Field(default={}, description="Parameters fixed by compatibility conditions.")
    values: Dict[str, str] = Field(default={}, description="Parameter values supplied for evaluation.")
    constraints: List[ConstraintModel] = Field(default=[])
    checks: List[CheckModel] = Field(default=[])
    failed_step: Optional[int] = Field(default=None)
    note: str = Field(default="")


class DecayRowModel(BaseModel):
    cz1: str
    cy4: str
    cz50: str = Field(..., description="Exact coefficient of t^50 in z.")
    cy50: str = Field(..., description="Exact coefficient of t^50 in y.")
    cz50_display: str = Field(..., description="cz50 rounded for display.")
    cy50_display: str = Field(..., description="cy50 rounded for display.")
    printed_cz50: Optional[str] = Field(default=None, description="Published value for this row, when the row is in the reference grid.")
    printed_cy50: Optional[str] = Field(default=None)


class CaseModel(BaseModel):
    """One catalogue entry with the verdict the engine reaches for it."""
    label: str
    lam: str = Field(..., alias="lambda")
    C: str
    expected: str
    verdict: str
    agrees: bool
    note: str = ""
    reasons: List[str] = Field(default=[])

    model_config = ConfigDict(populate_by_name=True)


class AnalysisReport(BaseModel):
    """Serializable record of a run; every field except the schema version is optional."""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema", description="Report schema version.")
    system: Optional[SystemEcho] = Field(default=None)
    balances: List[BalanceModel] = Field(default=[])
    balance_diagnostics: List[str] = Field(default=[])
    resonances: List[ResonanceModel] = Field(default=[])
    verdict: Optional[VerdictModel] = Field(default=None)
    branches: List[BranchModel] = Field(default=[])
    decay_table: Optional[List[DecayRowModel]] = Field(default=None)
    cases: Optional[List[CaseModel]] = Field(default=None)


# --- Run configuration ---

class RunConfig(BaseModel):
    """Validated command-line options."""
    model_config = ConfigDict(populate_by_name=True)

    command: Literal["balance", "resonances", "test", "series", "table", "verify", "cases"]
    lam: str = Field(default="1/9", alias="lambda", description="lambda as an exact rational string.")
    C: str = Field(default="-16/5", description="C as an exact rational string.")
    builtin: Optional[Literal["hh", "hh-z"]] = Field(default=None)
    file: Optional[str] = Field(default=None, description="System file, '-' for stdin.")
    order: Optional[int] = Field(default=None, ge=1)
    mode: Literal["SYMBOLIC", "EVALUATED"] = Field(default="SYMBOLIC")
    params: Dict[str, str] = Field(default={}, description="Free parameter values as exact strings.")
    precision: int = Field(default=128, ge=32, description="BigFloat digits.")
    format: Literal["json", "text"] = Field(default="text")
    grid: Optional[str] = Field(default=None, description="Decay-table grid 'cz1:cy4;...'.")
    exponent_range: Optional[List[str]] = Field(default=None, description="[low, high] for the balance search.")

    @model_validator(mode='before')
    @classmethod
    def normalize(cls, data: Any) -> Any:
        """Parses the params string and checks lambda and C; default mode follows params."""
        if isinstance(data, dict):
            processed = data.copy()
            params = processed.get('params')
            if isinstance(params, str):
                processed['params'] = {k: str(v) for k, v in parse_param_assignments(params).items()}
            if processed.get('params') and processed.get('mode') is None:
                processed['mode'] = "EVALUATED"
            if processed.get('mode') is None:
                processed.pop('mode', None)
            for key in ('lambda', 'lam', 'C'):
                value = processed.get(key)
                if value is not None:
                    try:
                        parse_rational(str(value))
                    except NumberFormatError as e:
                        raise ValueError(str(e)) from e
                    processed[key] = str(value)
            if processed.get('builtin') is None and processed.get('file') is None and processed.get('command') != 'cases':
                processed['builtin'] = "hh"
            return processed
        return data
