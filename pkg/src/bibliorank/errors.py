"""Exception hierarchy shared across the toolkit.

The CLI maps ``UsageError`` to exit code 1 and ``DataError`` (and
subclasses) to exit code 2; the HTTP service maps them to 4xx responses.
"""


class BiblioRankError(Exception):
    """Base class for all toolkit errors."""


class UsageError(BiblioRankError):
    """Invalid invocation: bad flags, missing required arguments."""


class DataError(BiblioRankError):
    """Invalid or inconsistent input data."""


class IngestError(DataError):
    """Fatal ingestion failure (strict mode only)."""


class UnknownDocumentError(DataError):
    """A doc_id was referenced that is not in the corpus."""

    def __init__(self, doc_id: str):
        super().__init__(f"unknown doc_id: {doc_id!r}")
        self.doc_id = doc_id


class UnknownAuthorError(DataError):
    """An author key was referenced that is not in the citation graph."""

    def __init__(self, author) -> None:
        super().__init__(f"unknown author: {author!r}")
        self.author = author


class InvalidNameError(DataError):
    """An author name string that cannot be normalized (empty/whitespace)."""


class QueryError(DataError):
    """Query string could not be parsed."""


class EmptyQueryError(QueryError):
    """No query token survived tokenization (all stop words or empty)."""
