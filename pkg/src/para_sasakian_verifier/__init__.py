"""Para Sasakian Verifier - exact curvature checks for homogeneous paracontact frames."""

__version__ = "0.1.0"
