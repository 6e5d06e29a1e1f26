"""Detection report as a JSON document

Description:
------------

The report holds the eddies with their per-layer centers, radii and profiles,
the number of candidates, the rejections per criterion and the wall-clock time
of each phase. Everything except the timings is identical for identical input.
"""

# Standard library imports
import json

# Eddyscan imports
from eddyscan.lib import plugins
from eddyscan.writers._writer import Writer


@plugins.register
class JsonWriter(Writer):
    """A writer for detection reports"""

    def write_data(self) -> None:
        json.dump(self.data.as_dict(), self.output_stream, indent=2)
        self.output_stream.write("\n")
