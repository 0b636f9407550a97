"""Figure regeneration for realgas solver output.

Standalone scripts that read the solver's CSV profiles and VTK fields and
rebuild the benchmark figures: four-panel 1-D comparisons and 2-D density
contours.  Pure readers - no physics is recomputed here.
"""

from .contours import ContourSpec, plot_2d_contours
from .panels import PanelSpec, Series, plot_1d_panels
from .readers import MalformedFileError, read_profile_csv, read_structured_vtk

__version__ = "0.1.0"

__all__ = [
    "ContourSpec",
    "MalformedFileError",
    "PanelSpec",
    "Series",
    "plot_1d_panels",
    "plot_2d_contours",
    "read_profile_csv",
    "read_structured_vtk",
    "__version__",
]
