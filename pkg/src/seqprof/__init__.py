"""Checker and categorical evaluator for a two-sided sequent calculus.

The package is layered: `syntax` and `parser` deal with raw proof
syntax, `typecheck` validates derivations, `fincat` and `profunctor`
provide the finite-category machinery, `semantics` interprets checked
syntax into it, and `models` switches between the three model modes.
"""

__version__ = "0.1.0"
