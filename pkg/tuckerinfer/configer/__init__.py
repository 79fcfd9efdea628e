from .loader import (
    ConfigLoader, read_config, create_schema, merge_dicts, check_schema_version, validation_keys
)
from .schema import BaseConfig, SCHEMA_VERSION

__all__ = ['ConfigLoader', 'read_config', 'BaseConfig', 'SCHEMA_VERSION',
           'create_schema', 'merge_dicts', 'check_schema_version', 'validation_keys']
