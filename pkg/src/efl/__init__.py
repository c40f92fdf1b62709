"""Epistemic friendship logic: models, formulas, dynamic updates and
bounded validity checking."""
from .dynamics import TransformResult, apply, apply_gddl, apply_trans, cut_K
from .engine import denote, evaluate, satisfies, truth_mask
from .errors import (CrossDimensionError, EFLError, EFLViolation, EvaluationError,
                     MissingWantRelation, ModelError, NotNamedAgent, ParseError,
                     UnboundInternal, UnknownNominal)
from .io import read_model, write_model
from .model import EFLModel, PointedModel, equal_modulo_iso, rename, validate
from .parser import parse_formula, parse_operator, parse_program
from .printer import format_formula, format_operator, format_program, pretty
from .validity import Countermodel, Signature, ValidUpTo, check_equiv, check_valid

__all__ = [
    "TransformResult", "apply", "apply_gddl", "apply_trans", "cut_K",
    "denote", "evaluate", "satisfies", "truth_mask",
    "CrossDimensionError", "EFLError", "EFLViolation", "EvaluationError",
    "MissingWantRelation", "ModelError", "NotNamedAgent", "ParseError",
    "UnboundInternal", "UnknownNominal",
    "read_model", "write_model",
    "EFLModel", "PointedModel", "equal_modulo_iso", "rename", "validate",
    "parse_formula", "parse_operator", "parse_program",
    "format_formula", "format_operator", "format_program", "pretty",
    "Countermodel", "Signature", "ValidUpTo", "check_equiv", "check_valid",
]
