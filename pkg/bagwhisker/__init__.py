"""Bag-and-whisker plots for bivariate data."""

__version__ = "1.0.0"
