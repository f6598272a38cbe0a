"""Homology-level tools for Dehn twists, handlebody curve words and crossing changes on fibered knots."""

__version__ = "0.1.0"
