"""
euler-mod4

Cycle types mod 4 of Euler graphs: simple-cycle enumeration and ε-class
naming, combined-cycle rule tables, the G(t,s) family with its graceful
numbering, and exhaustive sweeps over small regular Euler graphs.

Key Features:
- Cycle-type profiles and ε-classes (ε₀, ε₀₁₃, ...; T1..T4)
- Verified combined-cycle rule tables with witness graphs
- G(t,s), handles, block chains, hypercubes and other generators
- Closed-form graceful labeling plus a backtracking oracle
- Canonical forms and isomorph-free regular graph enumeration

Version: 1.0.0
"""

__version__ = "1.0.0"
__license__ = "MIT"

# Public API
__all__ = [
    "__version__",
    "__license__",
]
