# -*- coding: utf-8 -*-
from dataclasses import dataclass
from typing import Any

from memheat.config.baseclass.config_enums import ConfigSource
from memheat.config.baseclass.config_field import ConfigField

ConfigSource_Priority = [
    # ConfigSource determines the sequence in which ConfigMeta searches
    # for and defines settings...with those of lower priority being
    # defined first, but possibly overwritten by those of higher priority.
    # Environment variables beat files and class defaults so a run can be
    # steered from the shell (e.g. MEMHEAT_THREADS=4).
    # Note: A variable of low priority can be 'locked', thus disabling
    # a higher priority from overwriting it.
    ConfigSource.CONFIG_INSTANCE,  # Highest Priority
    ConfigSource.OS_ENVIRON,
    ConfigSource.CONFIG_CLASS,
    ConfigSource.CONFIG_YAML,  # Lowest Priority
]

_ERR_PFX = "ConfigValue: "


class _Unset:
    def __repr__(self):
        return "<unset>"


UNSET = _Unset()


class ConfigValueError:
    """Message Literals used for Errors in ConfigValue."""

    UNCOMMON = _ERR_PFX + "Expected type 'ConfigValue'. Got '{0}' instead."
    BAD_FIELD = (
        _ERR_PFX + "Config `field` must be of type `ConfigField`. "
        "Got {0} instead."
    )
    BAD_SOURCE = (
        _ERR_PFX + "Config `{0}.source` must be of type "
        "`ConfigSource`. Got {1} instead."
    )
    BAD_VALUE = (
        _ERR_PFX + "Config `{0}.value` must be of type(s) {1}. Got "
        "{2} instead."
    )
    REQUIRED_VALUE = (
        _ERR_PFX + "field '{0}' value is required and no default"
        " value was defined."
    )


@dataclass
class ConfigValue:
    field: ConfigField
    raw: Any = UNSET
    source: ConfigSource = ConfigSource.CONFIG_YAML
    source_name: str = ""

    def __post_init__(self):
        if not isinstance(self.field, ConfigField):
            raise ValueError(
                ConfigValueError.BAD_FIELD.format(type(self.field))
            )
        if not isinstance(self.source, ConfigSource):
            raise ValueError(
                ConfigValueError.BAD_SOURCE.format(
                    self.field.name, type(self.source)
                )
            )
        if self.value_set:
            self.raw = self.field.cast_value(self.raw)
            self.__validate()

    def __validate(self):
        if not self.field.validate_value(self.value):
            if self.value is None and self.field.required:
                raise ValueError(
                    ConfigValueError.REQUIRED_VALUE.format(self.field.name)
                )
            raise ValueError(
                ConfigValueError.BAD_VALUE.format(
                    self.field.name, self.field.datatype, type(self.value)
                )
            )

    @property
    def value(self):
        if self.value_set:
            return self.raw
        return self.field.default

    @property
    def value_set(self) -> bool:
        return self.raw is not UNSET

    @property
    def is_valid(self) -> bool:
        try:
            self.__validate()
            return True
        except ValueError:
            return False

    @property
    def source_priority(self):
        # Lower Number = Higher Priority
        return ConfigSource_Priority.index(self.source)

    @property
    def is_locked(self):
        return self.field.locked

    def common(self, config_value):
        return (
            isinstance(config_value, ConfigValue)
            and config_value.field == self.field
        )

    def __gt__(self, config_value):
        if self.common(config_value):
            return self.source_priority < config_value.source_priority
        raise TypeError(ConfigValueError.UNCOMMON.format(type(config_value)))

    def __lt__(self, config_value):
        if self.common(config_value):
            return self.source_priority > config_value.source_priority
        raise TypeError(ConfigValueError.UNCOMMON.format(type(config_value)))

    def compare(self, config_value):
        """Compare 2 ConfigValues and return the one that wins.

        The context of the comparison is that 'self' is the existing value.

        A 'set' value will always overwrite an 'unset' value, regardless of
        priority. A 'locked' value that has been set can never be
        overwritten, regardless of priority.
        """
        if not self.common(config_value):
            raise TypeError(
                ConfigValueError.UNCOMMON.format(type(config_value))
            )
        if (
            not config_value.value_set
            or (self.value_set and self.is_locked)
            or (self.value_set and self > config_value)
        ):
            return self
        return config_value
