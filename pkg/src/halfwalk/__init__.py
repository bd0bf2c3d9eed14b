"""Exact enumeration of simple walks on the half-line and the kernel-method toolkit around it."""

__version__ = "0.1.0"
