"""qorc: filter-and-rank orchestration of quantum circuits onto simulated backends."""

__version__ = "0.1.0"
