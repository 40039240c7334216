"""Lexicon-Grammar table to LMF lexicon compiler."""

__version__ = "0.1.0"
