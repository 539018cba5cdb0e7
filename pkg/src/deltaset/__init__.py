"""deltaset - exact delta-additive sets of unit vectors.

Construct, certify and bound sets of unit vectors whose pairwise sums have
norm at most delta, using exact rational arithmetic throughout.
"""

from deltaset.__version__ import __version__

__all__ = ["__version__"]
