"""File format integrations package."""
