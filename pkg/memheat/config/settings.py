# -*- coding: utf-8 -*-
from memheat.config.baseclass import ConfigMeta


class Settings(metaclass=ConfigMeta):
    """Process-wide settings for memheat.

    Values can be set at multiple levels:
        -   os.environ['MEMHEAT_...']
        -   as a Class attribute (here or a subclass)
        -   in `settings.yaml` next to this module
        -   at the instance-level, `Settings(MEMHEAT_THREADS=2)`

    The priority of each level over the others is defined in
    `ConfigSource_Priority` (memheat.config.baseclass.config_value).
    Reading attributes from an instance picks up environment changes made
    after import; the class attributes are resolved once.
    """

    _YAML_PATH = "settings.yaml"
