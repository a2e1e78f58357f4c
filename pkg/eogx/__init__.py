"""Edge-ordered graphs: linear extremal function classification and exact small-n oracles."""

__version__ = "0.1.0"
