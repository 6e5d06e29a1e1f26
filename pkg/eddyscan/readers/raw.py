"""JSON header with raw 32-bit float payloads, one file per variable

Description:
------------

Reads a frame written by the `raw` writer or converted from model output by
other tools. See `eddyscan.lib.frame_format` for the layout.

The velocity mask is shared by u, v and w: a cell is valid only where both u
and v are valid. Temperature and salinity carry their own masks.
"""

# Standard library imports
import json
from typing import Any, Dict

# Third party imports
import numpy as np

# Eddyscan imports
from eddyscan.data import GridSpec, OceanFrame, ScalarField2D, ScalarField3D, VectorField3D
from eddyscan.lib import exceptions
from eddyscan.lib import frame_format
from eddyscan.lib import plugins
from eddyscan.readers._reader import Reader


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


@plugins.register
class RawReader(Reader):
    """A reader for raw frame files"""

    def read_data(self) -> None:
        """Read the header and every payload it names"""
        header = self._read_header()
        nx, ny, nz = header["nx"], header["ny"], header["nz"]
        dtype = frame_format.BYTE_ORDERS[header.get("byte_order", "little")]
        fill_value = np.float32(header.get("fill_value", frame_format.DEFAULT_FILL_VALUE))

        for variable, file_name in header["variables"].items():
            shape = (ny, nx) if frame_format.VARIABLES[variable] == 2 else (nz, ny, nx)
            payload_path = self.directory / file_name
            try:
                raw = np.fromfile(payload_path, dtype=dtype)
            except OSError as err:
                raise exceptions.ReaderError(
                    f"Cannot read payload '{payload_path}' of variable '{variable}': {err.strerror}"
                ) from None

            expected = int(np.prod(shape))
            if raw.size != expected:
                raise exceptions.ReaderError(
                    f"Payload of variable '{variable}' has {4 * raw.size} bytes, "
                    f"expected {4 * expected} for shape {shape}"
                )
            values = raw.reshape(shape).astype(float)
            mask = (raw.reshape(shape) != fill_value) & np.isfinite(values)
            self.data[variable] = (np.where(mask, values, 0.0), mask)

        try:
            grid = GridSpec(
                nx=nx,
                ny=ny,
                nz=nz,
                dx=header.get("dx", 1.0),
                dy=header.get("dy", 1.0),
                dz=header.get("dz"),
                origin=header.get("origin"),
            )
        except exceptions.GridError as err:
            raise exceptions.ReaderError(f"Invalid grid in header '{self.file_path}': {err}") from None
        self.meta.update(
            grid=grid,
            frame_index=header.get("frame_index", 0),
            fill_value=float(fill_value),
        )

    def _read_header(self) -> Dict[str, Any]:
        """Parse and check the header"""
        try:
            header = json.load(self.input_stream)
        except (json.JSONDecodeError, UnicodeDecodeError) as err:
            raise exceptions.ReaderError(f"Header '{self.file_path}' is not valid JSON: {err}") from None
        if not isinstance(header, dict):
            raise exceptions.ReaderError(f"Header '{self.file_path}' must hold a JSON object")

        missing = [k for k in frame_format.REQUIRED_KEYS if k not in header]
        if missing:
            raise exceptions.ReaderError(f"Header '{self.file_path}' is missing {', '.join(missing)}")
        for key in ("nx", "ny", "nz"):
            if not isinstance(header[key], int) or header[key] < 1:
                raise exceptions.ReaderError(f"Header field '{key}' must be a positive integer, got {header[key]!r}")
        if not isinstance(header["variables"], dict):
            raise exceptions.ReaderError("Header field 'variables' must map variable names to file names")

        unknown = sorted(set(header["variables"]) - set(frame_format.VARIABLES))
        if unknown:
            raise exceptions.ReaderError(
                f"Unknown variable '{unknown[0]}' in header '{self.file_path}'. "
                f"Use one of {', '.join(frame_format.VARIABLES)}"
            )
        if ("u" in header["variables"]) != ("v" in header["variables"]):
            raise exceptions.ReaderError("Variables 'u' and 'v' must be given together")
        if "w" in header["variables"] and "u" not in header["variables"]:
            raise exceptions.ReaderError("Variable 'w' needs 'u' and 'v'")
        if header.get("byte_order", "little") not in frame_format.BYTE_ORDERS:
            raise exceptions.ReaderError(
                f"Header field 'byte_order' must be one of {', '.join(frame_format.BYTE_ORDERS)}"
            )
        self._check_geometry(header)
        return header

    @staticmethod
    def _check_geometry(header: Dict[str, Any]) -> None:
        """Check the types of the optional geometry fields"""
        for key in ("dx", "dy", "fill_value"):
            if key in header and not _is_number(header[key]):
                raise exceptions.ReaderError(f"Header field '{key}' must be a number, got {header[key]!r}")
        if "frame_index" in header and (
            not isinstance(header["frame_index"], int) or isinstance(header["frame_index"], bool)
        ):
            raise exceptions.ReaderError(
                f"Header field 'frame_index' must be an integer, got {header['frame_index']!r}"
            )

        dz = header.get("dz")
        if dz is not None:
            if not isinstance(dz, list) or not all(_is_number(d) for d in dz):
                raise exceptions.ReaderError(f"Header field 'dz' must be a list of numbers, got {dz!r}")
            if len(dz) != header["nz"]:
                raise exceptions.ReaderError(
                    f"Header field 'dz' has {len(dz)} layer thicknesses, expected nz={header['nz']}"
                )

        origin = header.get("origin")
        if origin is not None and not (
            isinstance(origin, list) and len(origin) == 2 and all(_is_number(o) for o in origin)
        ):
            raise exceptions.ReaderError(f"Header field 'origin' must be [lon0, lat0], got {origin!r}")

    def as_frame(self) -> OceanFrame:
        """Return the data as an ocean frame"""
        grid = self.meta["grid"]
        try:
            ssh = ScalarField2D(*self.data["ssh"]) if "ssh" in self.data else None
            vel = None
            if "u" in self.data:
                (u, u_mask), (v, v_mask) = self.data["u"], self.data["v"]
                w = self.data["w"][0] if "w" in self.data else None
                vel = VectorField3D(u, v, w, u_mask & v_mask)
            temp = ScalarField3D(*self.data["temp"]) if "temp" in self.data else None
            sal = ScalarField3D(*self.data["sal"]) if "sal" in self.data else None
        except exceptions.GridError as err:
            raise exceptions.ReaderError(f"Cannot build frame from '{self.file_path}': {err}") from None

        return OceanFrame(
            grid=grid,
            ssh=ssh,
            vel=vel,
            temp=temp,
            sal=sal,
            frame_index=self.meta["frame_index"],
            attrs=dict(source=self.file_path, fill_value=self.meta["fill_value"]),
        )
