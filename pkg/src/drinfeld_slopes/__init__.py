"""Exact Hecke matrices and slope data for Drinfeld cuspforms over F_q[t]."""

__version__ = "0.1.0"
