from .config import Config, merge
from .sections.root import ConfigData
from .asset import ConfigAsset
