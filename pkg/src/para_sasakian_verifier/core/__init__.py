"""Core utilities: the error hierarchy and logging setup."""
