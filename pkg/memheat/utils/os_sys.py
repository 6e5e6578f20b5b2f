# -*- coding: utf-8 -*-
import os
import sys


def get_abs_path(rel_path, ref_obj, ref_path=None):
    """Resolve `rel_path` against the directory of `ref_obj`'s module."""
    ref_path = ref_path or os.path.dirname(
        sys.modules[ref_obj.__module__].__file__
    )
    if rel_path.startswith("../"):
        rel_path = rel_path[3:]
        ref_path = os.path.dirname(ref_path)
        return get_abs_path(rel_path, ref_obj, ref_path)
    elif os.path.isabs(rel_path):
        new_path = rel_path
    else:
        new_path = os.path.join(ref_path, rel_path)

    if os.path.isfile(new_path):
        return new_path
    raise FileNotFoundError(f"File not found: {new_path}")


def ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return path
