"""Exact verification of generalized Hopf-Ore extensions."""

from .scalars import QQ, GF, Field, RatFunc
from .ncpoly import Diagnostic, Element, Generator, Presentation, Tensor
from .hopfstruct import HopfStructure, check_hopf_axioms, solve_skew_primitive_equation
from .orext import OreData, build_ore_extension, check_ore_data
from .ghoe import GhoeData, attach_and_verify, classify, derive_character, normalize_case
from .isowit import IsoWitness, NoWitness, solve_witness_1dim, verify_witness
from .catalog import build_named, list_names, verify_all
from . import presfile

__all__ = [
    "QQ", "GF", "Field", "RatFunc",
    "Diagnostic", "Element", "Generator", "Presentation", "Tensor",
    "HopfStructure", "check_hopf_axioms", "solve_skew_primitive_equation",
    "OreData", "build_ore_extension", "check_ore_data",
    "GhoeData", "attach_and_verify", "classify", "derive_character", "normalize_case",
    "IsoWitness", "NoWitness", "solve_witness_1dim", "verify_witness",
    "build_named", "list_names", "verify_all", "presfile",
]
