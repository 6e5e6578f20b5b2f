# -*- coding: utf-8 -*-
import logging
import os

from memheat.config.baseclass.config_enums import ConfigSource
from memheat.config.baseclass.config_field import (
    ConfigField,
    is_valid_envvar_name,
)
from memheat.config.baseclass.config_value import UNSET, ConfigValue
from memheat.utils.os_sys import get_abs_path
from memheat.utils.yaml import load_yaml

logger = logging.getLogger(__name__)

#  _YAML_FILE_VAR is the name of the class attribute that ConfigMeta will
#  look for in each subclass that points to an optional YAML settings file.
_YAML_FILE_VAR = "_YAML_PATH"

# _LOCK_ATTRS_ON_INIT_VAR is the name of the class attribute that ConfigMeta
# will look for in determining if to lock the class attributes once the
# class is created.
# A Locked class cannot add or change attributes. (Default: True)
_LOCK_ATTRS_ON_INIT_VAR = "_LOCK_ATTRS_ON_INIT"

_ERR_PFX = "ConfigMeta: "


class ConfigMetaError:
    """Message Literals used for Errors in ConfigMeta."""

    ATTRS_LOCKED = (
        _ERR_PFX + "Config `{0}` is locked. Cannot set attribute"
        " `{1}`.  (Set `_LOCK_ATTRS_ON_INIT` to False to "
        "keep unlocked)"
    )
    UNKNOWN_OVERRIDE = _ERR_PFX + "Config `{0}` has no setting `{1}`."
    BAD_KEYWORD = _ERR_PFX + "bad format: {0}"


class ConfigMeta(type):
    """Metaclass for settings classes merged from a YAML file, class
    attributes, environment variables and instance keyword overrides.

    Usage:
    class Settings(metaclass=ConfigMeta):
        _YAML_PATH = 'settings.yaml'  # Optional
        _LOCK_ATTRS_ON_INIT = True  # Optional
        MEMHEAT_THREADS = 0
        MEMHEAT_LOG_LEVEL = "INFO", "locked"

    Settings.memheat_threads          # class view, environment at import
    Settings().memheat_threads        # environment re-read now
    Settings(MEMHEAT_THREADS=2)       # instance override
    """

    def __new__(mcs, name, bases, attrs, *args, **kwargs):
        new_class = super().__new__(mcs, name, bases, attrs)
        type.__setattr__(new_class, "_class_built", False)

        #  Get the absolute path of the YAML file, if provided
        if rel_yaml_file := attrs.get(_YAML_FILE_VAR, None):
            abs_yaml_file = get_abs_path(rel_yaml_file, new_class)
            type.__setattr__(new_class, _YAML_FILE_VAR, abs_yaml_file)

        mcs.__import_values(new_class, attrs)
        type.__setattr__(new_class, "_class_built", True)
        return new_class

    def __setattr__(cls, key, value):
        if getattr(cls, "_class_built", False) and getattr(
            cls, _LOCK_ATTRS_ON_INIT_VAR, True
        ):
            raise AttributeError(
                ConfigMetaError.ATTRS_LOCKED.format(cls.__name__, key)
            )
        super().__setattr__(key, value)

    def __call__(cls, **overrides):
        instance = super().__call__()
        by_name = {k.upper(): v for k, v in overrides.items()}
        for unknown in set(by_name).difference(cls._values):
            raise KeyError(
                ConfigMetaError.UNKNOWN_OVERRIDE.format(cls.__name__, unknown)
            )
        for name, value in cls._values.items():
            if name in os.environ:
                value = value.compare(
                    ConfigValue(
                        value.field,
                        os.environ[name],
                        ConfigSource.OS_ENVIRON,
                        "os.environ",
                    )
                )
            if name in by_name:
                value = value.compare(
                    ConfigValue(
                        value.field,
                        by_name[name],
                        ConfigSource.CONFIG_INSTANCE,
                        cls.__name__,
                    )
                )
            object.__setattr__(instance, value.field.attr_name, value.value)
        return instance

    @staticmethod
    def __generate_config_field(name: str, metadata: dict = None, **kw):
        metadata = dict(metadata or {})
        metadata.update(kw)
        metadata["name"] = name
        return ConfigField(**metadata)

    @classmethod
    def __import_values(mcs, klass, attrs):
        existing_values = {}
        for base in reversed(klass.__bases__):
            if isinstance(base, ConfigMeta):
                existing_values.update(base._values)

        yaml_data = {}
        if _YAML_FILE_VAR in attrs:
            # already made absolute in __new__
            yaml_data = load_yaml(getattr(klass, _YAML_FILE_VAR))

        candidates = mcs.__yaml_values(klass, yaml_data) + mcs.__class_values(
            klass, attrs, existing_values
        )
        for value in candidates:
            name = value.field.name
            if existing_value := existing_values.get(name, None):
                value = existing_value.compare(
                    ConfigValue(
                        existing_value.field,
                        value.raw,
                        value.source,
                        value.source_name,
                    )
                )
            existing_values[name] = value

        for name, value in list(existing_values.items()):
            if name in os.environ:
                existing_values[name] = value.compare(
                    ConfigValue(
                        value.field,
                        os.environ[name],
                        ConfigSource.OS_ENVIRON,
                        "os.environ",
                    )
                )
        type.__setattr__(klass, "_values", existing_values)

        # Replace UPPER_CASE attributes with lower_case ones.
        for attr, config_value in klass._values.items():
            type.__setattr__(
                klass, config_value.field.attr_name, config_value.value
            )
            if attr in vars(klass):
                type.__delattr__(klass, attr)
        logger.debug(
            "%s settings resolved: %s",
            klass.__name__,
            {k: v.source.name for k, v in klass._values.items()},
        )

    @classmethod
    def __yaml_values(mcs, klass, yaml_data):
        values = []
        for key, entry in yaml_data.items():
            if isinstance(entry, dict):
                # metadata form: {datatype, default, required, locked, ...}
                field = mcs.__generate_config_field(key, entry)
                raw = entry.get("default", UNSET)
            else:
                field = mcs.__generate_config_field(key, default=entry)
                raw = entry
            values.append(
                ConfigValue(field, raw, ConfigSource.CONFIG_YAML, "yaml")
            )
        return values

    @classmethod
    def __class_values(mcs, klass, attrs, existing_values):
        values = []
        for attr, val in attrs.items():
            if attr.startswith("_") or not is_valid_envvar_name(attr):
                continue
            metadata = {}
            if isinstance(val, ConfigField):
                values.append(
                    ConfigValue(
                        val,
                        val.default,
                        ConfigSource.CONFIG_CLASS,
                        klass.__name__,
                    )
                )
                continue
            if isinstance(val, tuple):
                val, *flags = val
                for item in flags:
                    if item.lower() == "locked":
                        metadata["locked"] = True
                    elif item.lower() == "required":
                        metadata["required"] = True
                    else:
                        kw, kw_val = parse_keyword_str(item)
                        metadata[kw] = kw_val
            if attr in existing_values and not metadata:
                field = existing_values[attr].field
            else:
                field = mcs.__generate_config_field(
                    attr, metadata, default=val
                )
            values.append(
                ConfigValue(
                    field, val, ConfigSource.CONFIG_CLASS, klass.__name__
                )
            )
        return values


def parse_keyword_str(kw_str):
    """takes str 'keyword=my value' and returns ('keyword', 'my value')"""
    delimiters = ["=", ":"]

    # Find first instance of any delimiter
    sep = min(
        [i for i in [kw_str.find(d) for d in delimiters] if i >= 0] or [-1]
    )
    if 0 >= sep or sep == len(kw_str) - 1:
        # (delimiter not found or is first/last character)
        raise ValueError(ConfigMetaError.BAD_KEYWORD.format(kw_str))
    kw, val = kw_str[:sep].strip(), kw_str[sep + 1 :].strip()

    quotes = ("'", '"')
    if val[0] in quotes and val[-1] in quotes and val[0] == val[-1]:
        return kw, val[1:-1]
    elif val.lower() == "true":
        return kw, True
    elif val.lower() == "false":
        return kw, False
    else:
        try:
            return kw, int(val)
        except ValueError:
            try:
                return kw, float(val)
            except ValueError:
                return kw, val
