from ..mixins import ToDictMixin, FromJsonMixin, ToCsvMixin, FromCsvMixin


class IdtnetBaseObject(FromJsonMixin, ToDictMixin):
    class_dict = {}
    list_dict = {}


class IdtnetTable(IdtnetBaseObject, ToCsvMixin, FromCsvMixin):
    """
    Value object that is written to and read back from a CSV table.
    """
    pass
