"""Orbit types of finite groups acting on simplicial complexes."""

__version__ = "0.1.0"
