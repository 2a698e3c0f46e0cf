"""File formats: CSM files, source-map files and verify reports."""

from aeroimaging.formats.csm_file import read_csm, write_csm
from aeroimaging.formats.map_file import MapData, read_map, write_map, write_normalized_map
from aeroimaging.formats.report_exporter import ReportExporter

__all__ = [
    "MapData",
    "ReportExporter",
    "read_csm",
    "read_map",
    "write_csm",
    "write_map",
    "write_normalized_map",
]
