from enum import Enum, IntEnum
from typing import Any, Dict, Optional

from pydantic import BaseModel


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class ReportStatus(str, Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


class ExitCode(IntEnum):
    """Process exit codes shared by every command"""
    OK = 0
    NEGATIVE = 1
    INVALID_INPUT = 2
    BUDGET_EXHAUSTED = 3


class Report(BaseModel):
    """Machine-readable outcome of one command; field names are part of the output format"""
    command: str
    instance_digest: Optional[str] = None
    status: ReportStatus = ReportStatus.COMPLETE
    qualifier: Optional[str] = None
    results: Dict[str, Any] = {}
    budget: Dict[str, Any] = {}
