"""Data models package: exact tensors, geometry, manifests and reports."""
