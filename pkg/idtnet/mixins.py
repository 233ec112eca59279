import csv
import io

import numpy as np

from .exceptions import InputException
from .helpers import format_meta_line, format_value, parse_meta_line


class FromJsonMixin(object):
    class_dict = {}
    list_dict = {}

    @classmethod
    def from_json(cls, json_data):
        obj = cls()
        for key in json_data:
            if key in obj.class_dict:
                sub_obj = obj.class_dict[key].from_json(json_data[key])
                setattr(obj, key, sub_obj)

            elif key in obj.list_dict:
                sub_list = [obj.list_dict[key].from_json(data) for data in json_data[key]]
                setattr(obj, key, sub_list)
            else:
                setattr(obj, key, json_data[key])

        return obj


def to_dict(obj, classkey=None):
    """
    Recursively converts Python object into a dictionary
    """
    if isinstance(obj, dict):
        data = {}
        for (k, v) in obj.items():
            data[k] = to_dict(v, classkey)
        return data
    elif isinstance(obj, np.ndarray):
        return obj.tolist()
    elif isinstance(obj, np.generic):
        return obj.item()
    elif hasattr(obj, "__iter__") and not isinstance(obj, str):
        return [to_dict(v, classkey) for v in obj]
    elif hasattr(obj, "__dict__"):
        data = dict([(key, to_dict(value, classkey))
                    for key, value in obj.__dict__.items()
                    if not callable(value) and not key.startswith('_')])

        if classkey is not None and hasattr(obj, "__class__"):
            data[classkey] = obj.__class__.__name__
        return data
    else:
        return obj


class ToDictMixin(object):
    def to_dict(self):
        return to_dict(self)


class ToCsvMixin(object):
    csv_header = ()

    def csv_meta(self):
        """Pairs written on the object's own metadata line, if any"""
        return []

    def csv_rows(self):
        return []

    def to_csv(self, echo=None):
        """
        :param echo: (key, value) pairs written one per comment line before the table
        :return: CSV text
        """
        buffer = io.StringIO()

        for key, value in echo or []:
            buffer.write(format_meta_line([(key, value)]) + "\n")

        meta = self.csv_meta()
        if meta:
            buffer.write(format_meta_line(meta) + "\n")

        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.csv_header)
        for row in self.csv_rows():
            writer.writerow([format_value(value) for value in row])

        return buffer.getvalue()


class FromCsvMixin(object):
    csv_header = ()

    @classmethod
    def from_csv_rows(cls, rows, meta):
        raise NotImplementedError

    @classmethod
    def read_csv(cls, text, required=None):
        """
        Splits CSV text into its comment metadata and its rows.
        :param text:
        :param required: columns that must be present; defaults to csv_header
        :return: (meta dict, list of row dicts)
        """
        meta = {}
        body = []

        for line in text.splitlines():
            if line.startswith("#"):
                meta.update(parse_meta_line(line))
            elif line.strip():
                body.append(line)

        if not body:
            raise InputException("CSV has no header row", 302)

        reader = csv.DictReader(body)
        required = cls.csv_header if required is None else required
        missing = [column for column in required if column not in (reader.fieldnames or [])]
        if missing:
            raise InputException("CSV is missing columns", 302, ", ".join(missing))

        return meta, list(reader)

    @classmethod
    def from_csv(cls, text):
        meta, rows = cls.read_csv(text)
        try:
            return cls.from_csv_rows(rows, meta)
        except (TypeError, ValueError) as error:
            raise InputException("Malformed CSV value", 302, str(error))
