"""Restricted Nmatrix decision procedures for paraconsistent and incompatibility logics."""

from .formula import parse, render
from .logics import get_logic, list_logics
from .truthtable import build_table, entails

__all__ = ['parse', 'render', 'get_logic', 'list_logics', 'build_table', 'entails']
__version__ = '0.1.0'
