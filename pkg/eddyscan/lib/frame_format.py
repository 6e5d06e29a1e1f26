"""Layout of frame files

Description:
------------

A frame is stored as a JSON header and one raw binary payload file per
variable, next to the header:

    {
        "nx": 200, "ny": 200, "nz": 10,
        "dx": 4000.0, "dy": 4000.0, "dz": [4.0, 6.0, ...],
        "origin": [32.0, 12.0],
        "frame_index": 0,
        "fill_value": -9999.0,
        "byte_order": "little",
        "variables": {"ssh": "frame_0000.ssh.f32", "u": "frame_0000.u.f32", ...}
    }

Payloads are 32-bit floats ordered x fastest, then y, then z. The SSH is a 2D
variable with nx * ny values, all other variables have nx * ny * nz values.
Cells equal to the fill value are masked.
"""

# Number of dimensions of each known variable
VARIABLES = dict(ssh=2, u=3, v=3, w=3, temp=3, sal=3)

DEFAULT_FILL_VALUE = -9999.0

BYTE_ORDERS = dict(little="<f4", big=">f4")

REQUIRED_KEYS = ("nx", "ny", "nz", "variables")


def payload_name(stem: str, variable: str) -> str:
    """File name of the payload of a variable"""
    return f"{stem}.{variable}.f32"
