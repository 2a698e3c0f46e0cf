"""Utility modules for aeroimaging."""
