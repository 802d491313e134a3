"""cutforge: exact ordered real-closed field towers with first-class Dedekind cuts."""

__version__ = "0.1.0"
