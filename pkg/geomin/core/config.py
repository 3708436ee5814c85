# adapted from pyro - https://github.com/irmen/Pyro5 - see licenses/pyro-LICENSE.txt
import os
import typing 
import warnings

import msgspec

from .constants import LOGLEVEL, MIN_MANTISSA_BITS
from .exceptions import ConfigurationError
from .serializers import JSONSerializer
from .schema_validators import JsonSchemaValidator


config_file_schema = {
    "type" : "object",
    "properties" : {
        "PRECISION_BITS" : {"type" : "integer", "minimum" : MIN_MANTISSA_BITS},
        "MAX_SERIES_TERMS" : {"type" : "integer", "minimum" : 1},
        "ORACLE_GUARD_BITS" : {"type" : "integer", "minimum" : 16},
        "SIGNIFICANT_DIGITS_MAX" : {"type" : "integer", "minimum" : 1},
        "TABLE_GUARD_DIGITS" : {"type" : "integer", "minimum" : 0},
        "WORKERS" : {"type" : "integer", "minimum" : 1},
        "LOG_LEVEL" : {"type" : "string", "enum" : [level.name for level in LOGLEVEL]}
    },
    "additionalProperties" : False
}


class Configuration:
    """
    Allows to auto apply common settings used throughout the package,
    instead of passing these settings as arguments. Import ``global_config`` variable
    instead of instantitation this class. 

    Supports loading configuration from a JSON file whose path is specified 
    under environment variable GEOMIN_CONFIG. The file is validated against 
    ``config_file_schema`` before any value is applied. Environment variable GEOMIN_PREC 
    overrides PRECISION_BITS of the file. Supported values are - 

    PRECISION_BITS - mantissa bits of the default precision context. default 256.

    MAX_SERIES_TERMS - cap on the number of terms summed by any series. default 10000.

    ORACLE_GUARD_BITS - extra bits given to the reference minimizer used in error curves. default 64.

    SIGNIFICANT_DIGITS_MAX - largest number of digits tried by the significant digits test. default 200.

    TABLE_GUARD_DIGITS - extra decimal digits computed before a table value is rounded. default 6.

    WORKERS - processes used by sweeps over the degree. default 1 (no process pool).

    LOG_LEVEL - level of the command line logger. default WARNING.

    Parameters
    ----------
    use_environment: bool
        load values from JSON file and environment variables
    """

    __slots__ = [
        # arithmetic
        "PRECISION_BITS", "MAX_SERIES_TERMS", "ORACLE_GUARD_BITS",
        # experiments
        "SIGNIFICANT_DIGITS_MAX", "TABLE_GUARD_DIGITS", "WORKERS",
        # logging
        "LOG_LEVEL"
    ]

    def __init__(self, use_environment : bool = False):
        self.load_variables(use_environment)

    def load_variables(self, use_environment : bool = False):
        """
        set default values & use the values from environment file. 
        Set use_environment to False to not use environment file. 
        """
        self.PRECISION_BITS = 256
        self.MAX_SERIES_TERMS = 10000
        self.ORACLE_GUARD_BITS = 64
        self.SIGNIFICANT_DIGITS_MAX = 200
        self.TABLE_GUARD_DIGITS = 6
        self.WORKERS = 1
        self.LOG_LEVEL = LOGLEVEL.WARNING.name

        if not use_environment:
            return 
        file = os.environ.get("GEOMIN_CONFIG", None)
        if file:
            if not os.path.isfile(file):
                warnings.warn(f"configuration file {file} given by GEOMIN_CONFIG not found, using defaults", UserWarning)
            else:
                with open(file, "rb") as fd:
                    try:
                        config = JSONSerializer().load(fd) # type: typing.Dict
                    except msgspec.DecodeError as ex:
                        raise ConfigurationError(f"{file}: {ex}") from None
                JsonSchemaValidator(config_file_schema).validate(config)
                for item, value in config.items():
                    setattr(self, item, value)
        # environment variables overwrite config items
        precision = os.environ.get("GEOMIN_PREC", None)
        if precision:
            try:
                precision = int(precision)
            except ValueError:
                raise ConfigurationError(f"GEOMIN_PREC must be an integer, given {precision!r}") from None
            if precision < MIN_MANTISSA_BITS:
                raise ConfigurationError(f"GEOMIN_PREC must be at least {MIN_MANTISSA_BITS}, given {precision}")
            self.PRECISION_BITS = precision

    def copy(self):
        "returns a copy of this config as another object"
        other = object.__new__(Configuration)
        for item in self.__slots__:
            setattr(other, item, getattr(self, item))
        return other

    def asdict(self):
        "returns this config as a regular dictionary"
        return {item: getattr(self, item) for item in self.__slots__}


global_config = Configuration()


__all__ = ['global_config', 'Configuration']
