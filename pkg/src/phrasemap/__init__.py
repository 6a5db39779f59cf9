"""Keyphrase mining of geotagged, timestamped text onto map tag clouds."""

__version__ = "0.1.0"

from .config import PipelineConfig, preset_config
from .corpus import ReferenceCorpus, load_corpus, load_profile
from .keyphrase import ExtractionParams, Keyphrase, extract
from .layout import CloudDiff, CloudLayout, TagBox, layout_cloud
from .store import Dataset
from .textprep import PreparedText, prepare

__all__ = [
    "CloudDiff",
    "CloudLayout",
    "Dataset",
    "ExtractionParams",
    "Keyphrase",
    "PipelineConfig",
    "PreparedText",
    "ReferenceCorpus",
    "TagBox",
    "extract",
    "layout_cloud",
    "load_corpus",
    "load_profile",
    "prepare",
    "preset_config",
    "__version__",
]
