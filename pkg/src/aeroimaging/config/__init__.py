"""Configuration: constants, runtime settings and scenario files."""
