# -*- coding: utf-8 -*-
from dataclasses import dataclass, field, fields
from string import ascii_uppercase, digits
from typing import Any, List, Union

#  {type: default value} of datatypes allowed in settings files
_VALID_DATATYPES = {int: 0, float: 0.0, str: "", bool: False}
_DEFAULT_DATATYPE = str
_TRUE_STRINGS = {"1", "true", "yes", "on"}
_FALSE_STRINGS = {"0", "false", "no", "off"}

# Variable names must be strings and only consist of
# uppercase chars, digits, and underscore
VALID_VARNAME_CHARS = set(ascii_uppercase + digits + "_")

ERR_PFX = "Settings Field - "


def is_valid_envvar_name(val):
    return all(
        [
            isinstance(val, str),
            list(set(val).difference(VALID_VARNAME_CHARS)) == [],
            len(val) > 2,
            val[:1] not in digits,
        ]
    )


class ConfigFieldError:
    """Message Literals used for Errors in ConfigField."""

    TYPE_MISMATCH = (
        ERR_PFX + "Field `{0}` must be of type `{1}`.  Got '{2}' "
        "({3}) instead."
    )
    BAD_DATATYPE = (
        ERR_PFX + "Field `{0}` has unsupported datatype `{1}`. Allowed: {2}."
    )
    BAD_DEFAULT = (
        ERR_PFX + "Field `{0}` is of type `{1}` but has an "
        "inappropriate default value of `{2}` ({3})"
    )
    NAME_LENGTH = (
        ERR_PFX + " `{0}` field must be at least 2 characters in "
        "length. Got '{1}'."
    )
    NAME_STARTSWITH = (
        ERR_PFX + "Field `{0}` cannot begin with a digit - Got '{1}'."
    )
    NAME_ILLEGALCHAR = (
        ERR_PFX + "Field `{0}` cannot contain illegal characters: {1}. "
        "Got '{2}'."
    )
    INVALID_KEY = ERR_PFX + "ConfigField has no metadata field '{0}'."
    CAST_FAILED = ERR_PFX + "Field `{0}` cannot cast '{1}' to `{2}`."


@dataclass
class ConfigField:
    name: str
    # a single allowed datatype or a list of them; inferred from the
    # default when omitted, else <str>
    datatype: Union[type, str, List[type], None] = None
    alt_name: str = ""
    required: bool = False
    default: Any = None
    locked: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.datatype = self._interpret_datatype(self.datatype)
        self.__validate()

    def _interpret_datatype(self, datatype):
        if datatype is None:
            if self.default is not None:
                datatype = type(self.default)
            else:
                return _DEFAULT_DATATYPE
        if isinstance(datatype, (list, tuple)):
            return [self._interpret_datatype(d) for d in datatype]
        if isinstance(datatype, str):
            for valid in _VALID_DATATYPES:
                if datatype.lower() == valid.__name__:
                    return valid
        elif datatype in _VALID_DATATYPES:
            return datatype
        raise TypeError(
            ConfigFieldError.BAD_DATATYPE.format(
                self.name,
                datatype,
                ", ".join(t.__name__ for t in _VALID_DATATYPES),
            )
        )

    def __validate(self):
        self.__validate_name()
        if self.alt_name:
            self.__validate_name(self.alt_name, "alt_name")
        for fieldname in ["required", "locked"]:
            val = getattr(self, fieldname)
            if not isinstance(val, bool):
                raise TypeError(
                    ConfigFieldError.TYPE_MISMATCH.format(
                        fieldname, bool, val, type(val)
                    )
                )
        if self.default is not None and not self.validate_value(
            self.default
        ):
            raise ValueError(
                ConfigFieldError.BAD_DEFAULT.format(
                    self.name, self.datatype, self.default, type(self.default)
                )
            )

    @property
    def datatypes(self) -> tuple:
        if isinstance(self.datatype, list):
            return tuple(self.datatype)
        return (self.datatype,)

    def validate_value(self, value):
        if value is None:
            return not self.required
        for dtype in self.datatypes:
            if dtype is float and isinstance(value, int):
                if not isinstance(value, bool):
                    return True
            if isinstance(value, dtype):
                return True
        return False

    def cast_value(self, value):
        """Cast a (usually string) value onto the first datatype accepting
        it; environment variables always arrive as strings."""
        if self.validate_value(value) and not isinstance(value, str):
            return value
        for dtype in self.datatypes:
            if dtype is bool and isinstance(value, str):
                if value.strip().lower() in _TRUE_STRINGS:
                    return True
                if value.strip().lower() in _FALSE_STRINGS:
                    return False
                continue
            try:
                return dtype(value)
            except (TypeError, ValueError):
                continue
        raise ValueError(
            ConfigFieldError.CAST_FAILED.format(
                self.name, value, self.datatype
            )
        )

    def __validate_name(self, name=None, field="name"):
        name = name or self.name
        if not isinstance(name, str):
            raise TypeError(
                ConfigFieldError.TYPE_MISMATCH.format(
                    field, str, name, type(name)
                )
            )

        if len(name) < 2:
            raise ValueError(ConfigFieldError.NAME_LENGTH.format(field, name))

        if name[0] in digits:
            raise ValueError(
                ConfigFieldError.NAME_STARTSWITH.format(field, name)
            )

        if illegal_char := set(name).difference(VALID_VARNAME_CHARS):
            raise ValueError(
                ConfigFieldError.NAME_ILLEGALCHAR.format(
                    field, ", ".join(sorted(illegal_char)), name
                )
            )

    @classmethod
    def field_names(cls) -> set:
        return {f.name for f in fields(cls)}

    @property
    def attr_name(self):
        return (self.alt_name or self.name).lower()

    def __setattr__(self, key, value):
        if key not in self.field_names():
            raise KeyError(ConfigFieldError.INVALID_KEY.format(key))
        super().__setattr__(key, value)

    def __eq__(self, val):
        if not isinstance(val, ConfigField):
            return False
        return self.name.lower() == val.name.lower()

    def __hash__(self):
        return hash(self.name.lower())
