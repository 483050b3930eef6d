import warnings

from domset_tools.logging import silence_logger

warnings.filterwarnings('ignore')
silence_logger('domset_tools')
