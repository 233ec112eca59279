import os
import tempfile
import zlib

import numpy as np

from .exceptions import InputException, ValidationException


def stream_key(seed, label, *indices):
    """
    Entropy words of a labeled substream: (seed, crc32(label), *indices)
    """
    if seed is None or int(seed) < 0:
        raise ValidationException("Seed must be a non-negative integer", 201, "seed={0}".format(seed))

    return [int(seed), zlib.crc32(label.encode("utf-8"))] + [int(i) for i in indices]


def derive_stream(seed, label, *indices):
    """
    Builds an independent random stream for one purpose of a run.

    Streams for different labels or indices never share state, so the order in
    which work is scheduled cannot change the numbers a task draws.
    :param seed: master seed
    :param label: purpose string, e.g. "trajectory"
    :param indices: realization, trajectory index, ...
    :return: numpy Generator
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(stream_key(seed, label, *indices))))


def read_config_file(path):
    """
    Reads "key = value" lines. Blank lines and lines starting with # are skipped.
    Keys are normalized to underscores.
    :param path:
    :return: dict of strings
    """
    if not os.path.exists(path):
        raise InputException("Config file not found", 301, path)

    config = {}
    with open(path, encoding="utf-8") as fp:
        for number, raw in enumerate(fp, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue

            if "=" not in line:
                raise InputException("Malformed config line", 302, "{0}:{1}: {2}".format(path, number, line))

            key, value = line.split("=", 1)
            config[key.strip().lstrip("-").replace("-", "_")] = value.strip()

    return config


def atomic_write(path, text):
    """
    Writes text next to path and renames it into place.
    """
    directory = os.path.dirname(os.path.abspath(path))
    handle, temp_path = tempfile.mkstemp(prefix=".idtnet-", dir=directory)

    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as fp:
            fp.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise

    return path


def read_text(path):
    if not os.path.exists(path):
        raise InputException("Input file not found", 301, path)

    with open(path, encoding="utf-8") as fp:
        return fp.read()


def read_echoed_config(path):
    """
    Reads the "# key=value" lines a previous run echoed at the top of a CSV artifact.
    Metadata lines holding several pairs are not part of the echo and are skipped.
    """
    config = {}
    for line in read_text(path).splitlines():
        if not line.startswith("#"):
            break

        body = line.lstrip("#").strip()
        if "=" not in body or "," in body:
            continue

        key, value = body.split("=", 1)
        config[key.strip()] = value.strip()

    return config
