"""Set the pyproject version to the newest release in CHANGELOG.md."""
import re
import sys

import toml

RELEASE = re.compile(r"^## \[(\d+)\.(\d+)\.(\d+)\]", re.MULTILINE)


def latest_release(changelog="CHANGELOG.md"):
    with open(changelog) as f:
        releases = RELEASE.findall(f.read())
    if not releases:
        raise ValueError(f"{changelog} lists no releases")
    return ".".join(max(releases, key=lambda r: tuple(map(int, r))))


def set_version(version, pyproject="pyproject.toml"):
    with open(pyproject) as f:
        data = toml.load(f)
    previous = data["tool"]["poetry"]["version"]
    data["tool"]["poetry"]["version"] = version
    with open(pyproject, "w") as f:
        toml.dump(data, f)
    return previous


if __name__ == "__main__":
    version = latest_release()
    previous = set_version(version)
    print(f"memheat {previous} -> {version}")
    sys.exit(0)
