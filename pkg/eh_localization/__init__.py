"""
Exact verification of localization degree formulas and the restricted sumset
and grasshopper statements they imply.
"""

__version__ = "0.1.0"
