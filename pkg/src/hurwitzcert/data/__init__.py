"""Packaged certificate data files."""
