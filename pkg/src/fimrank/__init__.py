"""Exact computations for the monogenic free inverse monoid algebra, its
weighted matrix ranks, rational-series calculus and related monoids."""

__version__ = "0.1.0"
