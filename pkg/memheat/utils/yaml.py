import yaml


def load_yaml(filename):
    with open(filename) as f:
        data = yaml.safe_load(f)
    return data or {}


def dump_yaml(data, filename=None):
    """Serialise `data` in block style with the key order preserved.

    Returns the YAML text; also writes it when `filename` is given.
    """
    text = yaml.safe_dump(data, default_flow_style=False, sort_keys=False)
    if filename:
        with open(filename, "w") as f:
            f.write(text)
    return text
