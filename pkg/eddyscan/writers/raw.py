"""JSON header with raw 32-bit float payloads, one file per variable

Description:
------------

Writes a frame as a header and payload files named after the header, for
instance `frame_0000.json` with `frame_0000.ssh.f32`, `frame_0000.u.f32` and
so on in the same directory. Masked cells are written as the fill value. See
`eddyscan.lib.frame_format` for the layout.
"""

# Standard library imports
import json
import pathlib

# Third party imports
import numpy as np

# Eddyscan imports
from eddyscan.lib import exceptions
from eddyscan.lib import frame_format
from eddyscan.lib import plugins
from eddyscan.writers._writer import Writer


@plugins.register
class RawWriter(Writer):
    """A writer for raw frame files"""

    def setup_writer(self) -> None:
        if self.file_path == "<unknown>":
            raise exceptions.WriterError("The raw writer needs a file to place payload files next to")

    def write_data(self) -> None:
        frame = self.data
        header_path = pathlib.Path(self.file_path)
        fill_value = np.float32(frame.attrs.get("fill_value", frame_format.DEFAULT_FILL_VALUE))

        arrays = dict()
        if frame.ssh is not None:
            arrays["ssh"] = (frame.ssh.values, frame.ssh.mask)
        if frame.vel is not None:
            arrays["u"] = (frame.vel.u, frame.vel.mask)
            arrays["v"] = (frame.vel.v, frame.vel.mask)
            if frame.vel.w is not None:
                arrays["w"] = (frame.vel.w, frame.vel.mask)
        if frame.temp is not None:
            arrays["temp"] = (frame.temp.values, frame.temp.mask)
        if frame.sal is not None:
            arrays["sal"] = (frame.sal.values, frame.sal.mask)

        variables = dict()
        for variable, (values, mask) in arrays.items():
            file_name = frame_format.payload_name(header_path.stem, variable)
            payload = np.where(mask, values, fill_value).astype("<f4")
            try:
                payload.tofile(header_path.parent / file_name)
            except OSError as err:
                raise exceptions.WriterError(f"Cannot write payload '{file_name}': {err.strerror}") from None
            variables[variable] = file_name

        grid = frame.grid
        header = dict(
            nx=grid.nx,
            ny=grid.ny,
            nz=grid.nz,
            dx=grid.dx,
            dy=grid.dy,
            dz=list(grid.dz),
            origin=None if grid.origin is None else list(grid.origin),
            frame_index=frame.frame_index,
            fill_value=float(fill_value),
            byte_order="little",
            variables=variables,
        )
        json.dump(header, self.output_stream, indent=2)
        self.output_stream.write("\n")
