"""
CLI Module

Shared plumbing of the command-line front end.

Key Components:
- dependencies.py: shared budget/output flags and instance loading
- service.py: report rendering, digests and exit handling
- schemas.py: Report, output formats and exit codes
"""

from .schemas import ExitCode, OutputFormat, Report, ReportStatus

__all__ = ["ExitCode", "OutputFormat", "Report", "ReportStatus"]
