"""Aeroacoustic source-power imaging under uniform subsonic flow."""

__version__ = "0.1.0"
