"""Biclosed sets of strings, torsion shadows and wide shadows for brick gentle algebras."""
__version__ = "0.1.0"
