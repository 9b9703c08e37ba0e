"""Symbolic engine for games on countably infinite boards."""
