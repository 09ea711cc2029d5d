# utils/config_loader.py
import configparser
import os
import logging

logger = logging.getLogger(__name__)

DEFAULTS = {
    'LIMITS': {
        'max_depth': '24',
        'max_finite_algebra_size': '64',
        'max_ambient_dimension': '3',
        'max_snf_size': '8',
    },
    'LOGGING': {
        'log_file': 'mvforge.log',  # Relative to project root
        'log_level': 'INFO',
    },
    'CHECKS': {
        'default_trials': '200',
        'default_seed': '0',
        'chang_window': '10',
        'effros_shen_digits': '50',
    },
    'FSB': {
        'default_depth': '6',
    },
}

ENV_OVERRIDES = {
    ('LIMITS', 'max_depth'): 'MVFORGE_MAX_DEPTH',
    ('LOGGING', 'log_level'): 'MVFORGE_LOG_LEVEL',
}


class ConfigLoader:
    """INI settings for mvforge, with MVFORGE_* environment overrides.

    A missing file is written out from DEFAULTS.
    """

    PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))

    def __init__(self, config_file_relative_path='config/config.ini', config_path=None):
        self.config_file_path = os.path.abspath(
            config_path if config_path is not None else os.path.join(self.PROJECT_ROOT, config_file_relative_path)
        )
        self.config = configparser.ConfigParser()

        if os.path.exists(self.config_file_path):
            try:
                self.config.read(self.config_file_path)
                logger.info(f"Loaded settings from {self.config_file_path}")
            except configparser.Error as e:
                logger.error(f"Unreadable settings file {self.config_file_path}: {e}", exc_info=True)
        else:
            logger.warning(f"No settings file at {self.config_file_path}; writing defaults")
            self._write_defaults()

    def _write_defaults(self):
        self.config.read_dict(DEFAULTS)
        try:
            os.makedirs(os.path.dirname(self.config_file_path), exist_ok=True)
            with open(self.config_file_path, 'w') as handle:
                self.config.write(handle)
        except OSError as e:
            logger.error(f"Could not write default settings to {self.config_file_path}: {e}", exc_info=True)

    def get(self, section, key, fallback=None):
        """Raw string value; the matching MVFORGE_* environment variable wins."""
        env_name = ENV_OVERRIDES.get((section, key))
        if env_name and os.environ.get(env_name):
            logger.debug(f"{section}.{key} taken from {env_name}")
            return os.environ[env_name]
        return self.config.get(section, key, fallback=fallback)

    def getint(self, section, key, fallback=None):
        """Integer value; missing or malformed entries give the DEFAULTS entry."""
        if fallback is None:
            fallback = DEFAULTS.get(section, {}).get(key)
        value = self.get(section, key, fallback=fallback)
        try:
            return int(value)
        except (TypeError, ValueError):
            logger.warning(f"{section}.{key}={value!r} is not an integer, using {fallback}")
            return int(fallback) if fallback is not None else None

    @property
    def max_depth(self):
        return self.getint('LIMITS', 'max_depth')

    def get_absolute_path(self, section, key, fallback_relative_path=None):
        """A configured path made absolute against the project root, or None when unset."""
        value = self.get(section, key) or fallback_relative_path
        if value is None:
            logger.warning(f"No path configured for {section}.{key}")
            return None
        return value if os.path.isabs(value) else os.path.join(self.PROJECT_ROOT, value)
