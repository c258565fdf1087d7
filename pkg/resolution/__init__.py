from .charts import Chart, blow_up_point, initial_chart
from .graph import ExceptionalDivisor, ResolutionGraph, StrictBranch, contact_points, embedded_resolution
from .strata import Stratum, label_key, strata
