"""Narrow-syntax derivations and the operator algebra that mirrors them.

Subpackages by capability:

- :mod:`lingalg.su2` - exact 2x2 ladder/spin constants
- :mod:`lingalg.xbar` - branching-tree growth with Fibonacci state counts
- :mod:`lingalg.fibmatrix` - exact Fibonacci matrix identities
- :mod:`lingalg.dicke` - collective two-level ladders and the e(2) contraction
- :mod:`lingalg.thermofield` - doubled modes, squeeze vacua, entropy, free energy
- :mod:`lingalg.syntax` - Merge/phase/labeling derivation engine
- :mod:`lingalg.cli` - the ``lingalg`` command
- :mod:`lingalg.acceptance` - executable acceptance criteria (``lingalg selftest``)
"""

__version__ = "0.1.0"
