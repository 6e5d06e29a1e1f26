"""Readers that can read ocean frames

Description:
------------

To add a new reader, simply create a new .py-file which defines a class
inheriting from `eddyscan.readers._reader.Reader`. The class must be decorated
with the `eddyscan.lib.plugins.register` decorator as follows:

    from eddyscan.readers import _reader
    from eddyscan.lib import plugins

    @plugins.register
    class MyNewFormat(_reader.Reader):
        ...

To use a reader, call it using one of the read-functions defined below:

    from eddyscan import readers
    frame = readers.read_file("frame_0000.json", "raw").as_frame()

or simply

    frame = readers.load_frame("frame_0000.json")

The name used in `read_file` and `read_stream` to call the reader is the name
of the module (file) containing the reader.
"""

# Standard library imports
import pathlib
from typing import Any, IO, List, Tuple, Union

# Eddyscan imports
from eddyscan.data import OceanFrame
from eddyscan.lib import exceptions
from eddyscan.lib import plugins
from eddyscan.readers._reader import Reader


def names() -> Tuple[str, ...]:
    """List the names of available readers

    Note that this will import all readers.

    Returns:
        Names of the available readers.
    """
    return plugins.names(__name__)


def exists(reader_name: str) -> bool:
    """Check whether the given reader exists

    Args:
        reader_name:  Name of reader.

    Returns:
        True if reader exists, False otherwise.
    """
    return plugins.exists(__name__, reader_name)


def short_docs(*readers: str) -> List[Tuple[str, str]]:
    """Get one line documentation for readers

    If no readers are specified, documentation for all available readers are returned.
    """
    return plugins.short_docs(__name__, *readers)


def read_stream(input_stream: IO[bytes], reader_name: str = "raw", **reader_args: Any) -> Reader:
    """Read a bytes stream with a given reader

    Args:
        input_stream:  Stream of bytes that should be read.
        reader_name:   Name of reader that should be used.

    Returns:
        The reader, after reading.
    """
    reader = plugins.call(__name__, reader_name, input_stream=input_stream, **reader_args)
    reader.read()
    return reader


def read_file(
    file_path: Union[str, pathlib.Path], reader_name: str = "raw", **reader_args: Any
) -> Reader:
    """Read a file with a given reader

    Args:
        file_path:    Path to file that should be read.
        reader_name:  Name of reader that should be used.

    Returns:
        The reader, after reading.
    """
    try:
        input_stream = open(file_path, mode="rb")
    except OSError as err:
        raise exceptions.FrameIOError(f"Cannot open '{file_path}': {err.strerror}") from None

    with input_stream:
        return read_stream(input_stream, reader_name, **reader_args)


def load_frame(file_path: Union[str, pathlib.Path], reader_name: str = "raw") -> OceanFrame:
    """Read one frame from file

    Args:
        file_path:    Path to the frame header.
        reader_name:  Name of reader that should be used.

    Returns:
        The frame, with masks applied.
    """
    return read_file(file_path, reader_name).as_frame()
