"""Weyl transform on finite abelian groups, with Schatten-Lorentz norm
machinery and ratio checks for Paley, Hausdorff-Young, Hormander and
Hardy-Littlewood type inequalities."""

from .abelian_group import (Character, FiniteAbelianGroup, GroupElement,
                            character_eval, group_add, make_group, parse_group)
from .weyl import (KernelOperator, PhaseSpaceFunction, inverse_weyl,
                   schrodinger_rep, weyl_transform)

__version__ = "0.1.0"

__all__ = [
    "Character", "FiniteAbelianGroup", "GroupElement", "KernelOperator",
    "PhaseSpaceFunction", "character_eval", "group_add", "inverse_weyl",
    "make_group", "parse_group", "schrodinger_rep", "weyl_transform",
]
