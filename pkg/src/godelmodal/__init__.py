"""Decision procedures and proof tools for propositional Godel logic and the
box/diamond fragments of its crisp- and fuzzy-frame modal extensions."""

__version__ = "0.1.0"
