import math


def format_number(value):
    """
    Converts a number to its shortest round-trip text form
    :param value: int, float or numpy scalar
    :return:
    """
    if isinstance(value, bool):
        return str(value).lower()

    if isinstance(value, int) or (hasattr(value, "dtype") and value.dtype.kind in "iu"):
        return str(int(value))

    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"

    return repr(value)


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(v) for v in value)

    return format_number(value)


def format_meta_line(pairs):
    """
    Formats a metadata comment line: "# key=value,key=value"
    :param pairs: list of (key, value) tuples, order is kept
    :return:
    """
    return "# " + ",".join("{0}={1}".format(key, format_value(value)) for key, value in pairs)


def parse_meta_line(line):
    """
    Parses a comment line written by format_meta_line into a dict of strings
    :param line:
    :return:
    """
    body = line.lstrip("#").strip()
    meta = {}

    for part in body.split(","):
        if "=" not in part:
            continue
        key, value = part.split("=", 1)
        meta[key.strip()] = value.strip()

    return meta


def format_mean_se(mean, se, significant=3):
    """
    Formats an estimate with its standard error, e.g. "-0.00347 ± 0.00111"
    :param mean:
    :param se:
    :param significant: significant digits kept in the standard error
    :return:
    """
    if se > 0 and math.isfinite(se):
        decimals = max(0, significant - 1 - int(math.floor(math.log10(se))))
    else:
        decimals = significant

    return "{0:.{2}f} ± {1:.{2}f}".format(mean, se, decimals)
