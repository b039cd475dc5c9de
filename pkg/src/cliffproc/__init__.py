"""Clifford-algebra process calculus."""

__version__ = "0.1.0"
