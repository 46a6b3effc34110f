from planner import DataAsset

from .sections.root import ConfigData


class ConfigAsset(DataAsset[ConfigData]):
    pass
