"""Verification services package."""
