"""Definition of Eddyscan-specific exceptions

Description:
------------

Custom exceptions used by Eddyscan for more specific error messages and
handling. Each exception carries the exit code and category used by the
command line interface when it reports the error.
"""


class EddyscanException(Exception):
    exit_code = 1
    category = "error"


#
# Configuration errors, exit code 2
#
class ConfigError(EddyscanException):
    exit_code = 2
    category = "config"


class UnknownPackageError(ConfigError):
    pass


class UnknownPluginError(ConfigError):
    pass


#
# Input and output errors, exit code 3
#
class FrameIOError(EddyscanException):
    exit_code = 3
    category = "io"


class ReaderError(FrameIOError):
    pass


class WriterError(FrameIOError):
    pass


#
# Data validation errors, exit code 4
#
class DataValidationError(EddyscanException):
    exit_code = 4
    category = "data"


class GridError(DataValidationError):
    pass


class SampleOutOfDomainError(DataValidationError):
    pass


class MaskedRegionError(DataValidationError):
    pass


class RingOutOfBoundsError(DataValidationError):
    pass


class MaskedRingError(DataValidationError):
    pass


class MissingVariableError(DataValidationError):
    def __init__(self, variable: str) -> None:
        super().__init__(f"Frame is missing variable '{variable}'")
        self.variable = variable


class SceneValidationError(DataValidationError):
    pass
