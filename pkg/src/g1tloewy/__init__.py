"""Loewy structure of G1T-Verma modules from alcove combinatorics."""

__version__ = "0.1.0"
