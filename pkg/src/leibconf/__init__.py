"""Exact workbench for Leibniz conformal algebras and their extensions."""

__version__ = "0.1.0"
