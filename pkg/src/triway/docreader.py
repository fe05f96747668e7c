# -*- coding: utf-8 -*-
"""
Reading of JSON configuration files.

Command-line flags take precedence: `DocReader.merge` overlays the flags that
were actually given on top of the file values.

"""

import json
import logging
from typing import Mapping

from triway.core import ConfigError

logger = logging.getLogger(__name__)


class DocReader:
    def __init__(self):
        self.source = None
        self.config = dict()

    def read(self, filename: str) -> dict:
        """
        Load a JSON object from file.

        Parameters
        ----------
        filename : str
            Path of the configuration file.

        Returns
        -------
        dict
            The configuration.

        """
        try:
            with open(filename, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as err:
            raise ConfigError("cannot read %s: %s" % (filename, err.strerror)) from None
        except json.JSONDecodeError as err:
            raise ConfigError("%s is not valid JSON (line %d): %s" % (filename, err.lineno, err.msg)) from None
        if not isinstance(data, dict):
            raise ConfigError("%s must contain a JSON object" % filename)
        self.source = filename
        self.config = data
        logger.debug("read %d keys from %s", len(data), filename)
        return data

    def loads(self, text: str) -> dict:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError("invalid JSON config: %s" % err.msg) from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        self.config = data
        return data

    @staticmethod
    def merge(config: Mapping, overrides: Mapping) -> dict:
        """Copy of `config` with every non-None override applied."""
        out = dict(config)
        for key, val in overrides.items():
            if val is not None:
                out[key] = val
        return out
