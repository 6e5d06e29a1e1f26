"""Writers for frames, detection reports and tables

Description:
------------

To add a new writer, simply create a new .py-file which defines a class
inheriting from `eddyscan.writers._writer.Writer`. The class must be decorated
with the `eddyscan.lib.plugins.register` decorator as follows:

    from eddyscan.writers import _writer
    from eddyscan.lib import plugins

    @plugins.register
    class MyNewFormat(_writer.Writer):
        ...

To use a writer, call it using one of the write-functions defined below:

    from eddyscan import writers
    writers.write_file("report.json", "json", report)

or

    from eddyscan import writers
    with open("report.json", mode="wb") as output_stream:
        writers.write_stream(output_stream, "json", report)

Note that the stream should be opened in binary mode to allow the writers to
handle encodings if necessary.

The name used in `write_file` and `write_stream` to call the writer is the name
of the module (file) containing the writer.
"""

# Standard library imports
import pathlib
from typing import Any, IO, List, Tuple, Union

# Eddyscan imports
from eddyscan.lib import exceptions
from eddyscan.lib import plugins


def names() -> Tuple[str, ...]:
    """List the names of available writers

    Note that this will import all writers.

    Returns:
        Names of the available writers.
    """
    return plugins.names(__name__)


def exists(writer_name: str) -> bool:
    """Check whether the given writer exists

    Args:
        writer_name:  Name of writer.

    Returns:
        True if writer exists, False otherwise.
    """
    return plugins.exists(__name__, writer_name)


def short_docs(*writers: str) -> List[Tuple[str, str]]:
    """Get one line documentation for writers

    If no writers are specified, documentation for all available writers are returned.
    """
    return plugins.short_docs(__name__, *writers)


def write_stream(output_stream: IO[bytes], writer_name: str, data: Any, **writer_args: Any) -> None:
    """Write data to a stream with a given writer

    Args:
        output_stream:  Stream of bytes to write to.
        writer_name:    Name of writer that should be used.
        data:           Frame, report or table that should be written.
    """
    writer = plugins.call(__name__, writer_name, output_stream=output_stream, data=data, **writer_args)
    writer.write()


def write_file(
    file_path: Union[str, pathlib.Path], writer_name: str, data: Any, **writer_args: Any
) -> None:
    """Write data to a file with a given writer

    Args:
        file_path:    Path to file that should be written.
        writer_name:  Name of writer that should be used.
        data:         Frame, report or table that should be written.
    """
    try:
        output_stream = open(file_path, mode="wb")
    except OSError as err:
        raise exceptions.WriterError(f"Cannot open '{file_path}' for writing: {err.strerror}") from None

    with output_stream:
        write_stream(output_stream, writer_name, data, **writer_args)
