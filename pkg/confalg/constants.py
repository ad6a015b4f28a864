import importlib.resources
import json
import logging
import os


def load_manifest_dir(dir_path):
    """
    Collects JSON manifests from a directory and maps their names to paths.

    Parameters:
    dir_path (str): Directory to scan. Empty or missing directories give an empty mapping.

    Returns:
    dict: Lower-case file stem -> full path, e.g. {'virasoro': '/path/virasoro.json'}.
    """
    found = {}
    if dir_path and os.path.isdir(dir_path):
        for file in sorted(os.listdir(dir_path)):
            if file.endswith(".json"):
                found[file.rsplit(".", 1)[0].lower()] = os.path.join(dir_path, file)
    return found


def load_manifest_data(filename):
    """
    Load a bundled manifest from the data/manifests directory inside the package.

    Parameters:
    filename (str): File name, e.g. "virasoro.json".

    Returns:
    dict: Parsed JSON document, or an empty dictionary when the file is not bundled.

    Raises:
    json.JSONDecodeError: If the file contains invalid JSON data.
    """
    try:
        with importlib.resources.files("confalg.data.manifests").joinpath(filename).open("r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        logging.warning(f"{filename} not found in package data")
        return {}


def bundled_manifest_paths():
    """
    @return: name -> path for every manifest shipped with the package, extended by CONFALG_MANIFEST_DIR
    """
    paths = {}
    root = importlib.resources.files("confalg.data.manifests")
    for entry in root.iterdir():
        if entry.name.endswith(".json"):
            paths[entry.name.rsplit(".", 1)[0]] = str(entry)
    paths.update(MANIFEST_DIR)
    return dict(sorted(paths.items()))


MAX_LAMBDA = int(os.getenv("CONFALG_MAX_LAMBDA", "12"))
DEFAULT_UP_TO = int(os.getenv("CONFALG_UP_TO", "4"))
DEFAULT_DMAX = int(os.getenv("CONFALG_DMAX", "1"))
DEFAULT_LMAX = int(os.getenv("CONFALG_LMAX", "1"))

MANIFEST_DIR = load_manifest_dir(os.getenv("CONFALG_MANIFEST_DIR", ""))

BUNDLED_MANIFEST_NAMES = [
    "virasoro",
    "cur-mat2",
    "cur-dual-numbers",
    "phi-extension",
    "skeletal-3cocycle",
    "contraction-rank3",
    "two-algebra-roundtrip",
]
