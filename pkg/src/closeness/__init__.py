"""Exact and sampled closeness centrality for weighted graphs."""
from .audit import BenchRecord, ErrorAudit, run_audit, run_bench
from .errors import (ClosenessError, DisconnectedGraphError, GenerationError,
                     GraphFormatError, ParameterError)
from .exact import diameter_upper_bound, exact_all, exact_centrality, exact_diameter
from .generators import GeneratorSpec, generate, parse_spec
from .graph import ConnectivityCertificate, Graph, check_connected, dump, dumps, load_edge_list, loads
from .paths import DistanceVector, distance_rows, eccentricity, sssp
from .rand import (SamplePlan, SampleTrace, estimate_centrality, estimate_with_plan,
                   failure_bound, sample_size)
from .report import CentralityReport, DiameterInfo

__version__ = "0.1.0"
