"""Exact computations in the branch groups G_d acting on the d-regular rooted tree."""

from .presets import gd_system
from .tree import LevelPermutation, WreathSystem
from .words import GroupConfig, GroupWord, exponent_vector, format_word, parse

__all__ = [
    "GroupConfig",
    "GroupWord",
    "LevelPermutation",
    "WreathSystem",
    "exponent_vector",
    "format_word",
    "gd_system",
    "parse",
]
