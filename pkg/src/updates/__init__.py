"""
Updates Module

Signed insert/delete actions on the D and E sets of a database and how they change a deductive database.
It includes:

- Contradiction-free updates and their application to a database
- New constants NC(D,R,U) and request fulfillment
- The minimality preorder over valuation profiles

Key Components:
- schemas.py: UpdateAction and Update models
- service.py: apply, fulfills, leq_update and the profile helpers
"""

from .schemas import ActionSign, ActionTarget, Update, UpdateAction, is_update
from .service import (
    apply, apply_instance, canonicalize, changes, changes_leq, comparison_atoms,
    fulfills, is_effective, leq_update, new_constants, profile_leq, representatives,
    strictly_below, valuation_profile,
)

__all__ = [
    "ActionSign",
    "ActionTarget",
    "Update",
    "UpdateAction",
    "is_update",
    "apply",
    "apply_instance",
    "canonicalize",
    "changes",
    "changes_leq",
    "comparison_atoms",
    "fulfills",
    "is_effective",
    "leq_update",
    "new_constants",
    "profile_leq",
    "representatives",
    "strictly_below",
    "valuation_profile",
]
