# -*- coding: utf-8 -*-
from enum import Enum, EnumMeta


class CustomEnum(EnumMeta):
    """Enum metaclass adding lookups used by config-facing enums"""

    def names(cls):
        """Return a list of names of the Enum members"""
        return [
            member.name
            for member in cls.__members__.values()
            if isinstance(member, Enum)
        ]

    def values(cls):
        """Return a list of the member values (the config spellings)"""
        return [member.value for member in cls.__members__.values()]

    def parse(cls, value):
        """Return the member whose value or name matches `value`.

        Matching ignores case and treats '-' and '_' alike, so both
        "heat-check" and "HEAT_CHECK" resolve to the same member.
        """
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        for member in cls.__members__.values():
            spellings = {
                str(member.value).lower().replace("-", "_"),
                member.name.lower(),
            }
            if key in spellings:
                return member
        raise ValueError(
            f"{cls.__name__}: unknown value '{value}'. "
            f"Expected one of {cls.values()}"
        )
