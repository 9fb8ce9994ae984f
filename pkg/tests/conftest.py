"""Anchors the tests directory so sibling helper modules are importable."""
