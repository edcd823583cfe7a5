"""Homotopy colimits of truncated simplicial sets by explicit bar constructions.

Finite diagram shapes, truncated simplicial sets, two-sided (co)bar
constructions, weighted (co)limits and Kan extensions, plus a verification
driver that mechanically checks the comparison theorems relating the local
(bar) and global (replacement-category) definitions on finite instances.
"""

__version__ = "0.1.0"
