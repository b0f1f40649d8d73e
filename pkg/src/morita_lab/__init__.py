"""Exact-arithmetic workbench for modules over Morita rings (A N; M B) with
zero bimodule pairings: quadruple modules, the twelve functors, Ext/Tor
machinery, cotorsion-class membership tests, and verification suites."""

__version__ = "0.1.0"
