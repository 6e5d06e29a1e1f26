"""Comma-separated values, one row per eddy layer or table row

Description:
------------

Detection reports are written with one row per layer of each eddy, with the
profile statistics as columns. Tables (sweeps, benchmarks, tracks and ring
diagnostics) are written as they are.


Example:
--------

frame_index,id,polarity,layer,x,y,radius,temperature_mean,...
0,1,cyclonic,0,50,60,11,24.93,...
0,1,cyclonic,1,50,60,10,24.71,...
0,2,anticyclonic,0,120,80,9,25.40,...

"""

# Third party imports
import pandas as pd

# Eddyscan imports
from eddyscan.lib import plugins
from eddyscan.writers._writer import Writer


@plugins.register
class CsvWriter(Writer):
    """A writer for csv-files"""

    def write_data(self) -> None:
        """Write data to a CSV file

        Use pandas to do the work
        """
        table = self.data if isinstance(self.data, pd.DataFrame) else self.data.as_dataframe()
        table.to_csv(self.output_stream, index=False)
