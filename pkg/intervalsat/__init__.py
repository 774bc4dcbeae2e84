"""
Interval satisfiability with metric constraints
Decides Allen interval networks with Horn DLR constraints on starting
or ending points and builds exact rational models
"""

__version__ = "1.0.0"
