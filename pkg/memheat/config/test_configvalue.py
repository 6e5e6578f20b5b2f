# -*- coding: utf-8 -*-
import pytest

from memheat.config.baseclass import ConfigField, ConfigSource, ConfigValue
from memheat.config.baseclass.config_field import (
    VALID_VARNAME_CHARS,
    ConfigFieldError,
)


def field_vars():
    return {"name": "TEST"}


def test_field_valid_names():
    dct = field_vars()
    field = ConfigField(**dct)
    assert field.name == dct["name"]

    dct["name"] = "TEST_WITH_UNDERSCORES"
    field = ConfigField(**dct)
    assert field.name == dct["name"]

    dct["name"] = "TEST_WITH_NUMBERS_0123456789"
    field = ConfigField(**dct)
    assert field.name == dct["name"]


def test_field_invalid_names():
    # Field names must:
    # 1) consist of uppercase characters, digits, or underscore
    # 2) be at least 2 characters in length
    # 3) begin with an alpha character.
    for i, bad_name in enumerate(
        ["5TART_WITH_NUMBER", "A", "lower_case_name", "SPEC!@L_CHAR$"]
    ):
        dct = field_vars()
        invalid_chars = set(bad_name).difference(VALID_VARNAME_CHARS)
        dct["name"] = bad_name
        if i == 1:
            expected_error = ConfigFieldError.NAME_LENGTH.format(
                "name", dct["name"]
            )
        elif i:
            expected_error = ConfigFieldError.NAME_ILLEGALCHAR.format(
                "name", ", ".join(sorted(invalid_chars)), dct["name"]
            )
        else:
            expected_error = ConfigFieldError.NAME_STARTSWITH.format(
                "name", dct["name"]
            )

        with pytest.raises(ValueError) as exc:
            _ = ConfigField(**dct)
        assert exc.value.args[0] == expected_error


def test_field_invalid_attrs():
    # Cannot add new/undefined attributes to a field
    dct = field_vars()
    bad_attr = "invalid_attribute"
    field = ConfigField(**dct)
    expected_error = ConfigFieldError.INVALID_KEY.format(bad_attr)
    with pytest.raises(KeyError) as exc:
        setattr(field, bad_attr, "test")
    assert exc.value.args[0] == expected_error


def test_field_datatypes():
    dct = field_vars()
    # Default datatype == <str>
    field = ConfigField(**dct)
    assert field.datatype is str

    for my_int in [int, "int"]:
        dct["datatype"] = my_int
        field = ConfigField(**dct)
        assert field.datatype is int

    for my_float in [float, "float"]:
        dct["datatype"] = my_float
        field = ConfigField(**dct)
        assert field.datatype is float
        # ints are accepted where floats are expected
        assert field.validate_value(3)
        assert not field.validate_value(True)

    # Multiple datatypes
    dct["datatype"] = [int, bool]
    field = ConfigField(**dct)
    assert isinstance(9, field.datatypes)
    assert isinstance(True, field.datatypes)
    assert not isinstance("True", field.datatypes)

    dct["datatype"] = "complex"
    with pytest.raises(TypeError):
        ConfigField(**dct)


def test_field_datatype_from_default():
    field = ConfigField(name="THREADS", default=4)
    assert field.datatype is int
    with pytest.raises(ValueError):
        ConfigField(name="THREADS", datatype=int, default="four")


def test_cast_value():
    assert ConfigField(name="CELLS", datatype=int).cast_value("12") == 12
    assert ConfigField(name="DT", datatype=float).cast_value("1e-3") == 1e-3
    flag = ConfigField(name="FLAG", datatype=bool)
    assert flag.cast_value("Yes") is True
    assert flag.cast_value("0") is False

    field = ConfigField(name="CELLS", datatype=int)
    with pytest.raises(ValueError) as exc:
        field.cast_value("twelve")
    assert exc.value.args[0] == ConfigFieldError.CAST_FAILED.format(
        "CELLS", "twelve", int
    )


def test_compare_values():
    field = ConfigField(name="TEST", default=5)
    value1 = ConfigValue(field=field)
    assert value1.is_valid  # Default value is active and valid
    assert not value1.value_set  # Value is still not set though
    assert value1.value == 5

    value2 = ConfigValue(field, 1, ConfigSource.CONFIG_YAML)
    assert value2.value_set
    assert value1.common(value2)
    assert value1.compare(value2) is value2  # set beats unset
    assert value2.compare(value1) is value2  # unset never wins

    value3 = ConfigValue(field, "4", ConfigSource.OS_ENVIRON)
    assert value3.value == 4  # cast on construction
    assert value3 > value2
    assert value2.compare(value3) is value3
    assert value3.compare(value2) is value3


def test_locked_value_wins():
    field = ConfigField(name="TEST", default=5, locked=True)
    low = ConfigValue(field, 1, ConfigSource.CONFIG_YAML)
    high = ConfigValue(field, 2, ConfigSource.CONFIG_INSTANCE)
    assert low.compare(high) is low


def test_uncommon_values():
    value1 = ConfigValue(ConfigField(name="ONE"), "a")
    value2 = ConfigValue(ConfigField(name="TWO"), "b")
    with pytest.raises(TypeError):
        value1.compare(value2)
