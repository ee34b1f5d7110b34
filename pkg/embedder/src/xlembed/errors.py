class XlembedError(Exception):
    """Base for all errors raised by this package."""


class ModelLoadError(XlembedError):
    """The sentence-embedding model could not be loaded."""

    def __init__(self, model_id: str, cause: Exception):
        self.model_id = model_id
        super().__init__(f"cannot load model {model_id!r}: {cause}")


class MalformedLineError(XlembedError):
    """A TSV line does not have exactly two tab-separated fields."""

    def __init__(self, line_number: int, n_fields: int):
        self.line_number = line_number
        self.n_fields = n_fields
        super().__init__(f"line {line_number}: expected 2 fields, got {n_fields}")
