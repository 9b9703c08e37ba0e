"""Edge-probe games on finite and infinite boards."""

__version__ = "0.1.0"
