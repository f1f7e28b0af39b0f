"""Graph-coloring feasibility labeling circuits: compile, simulate, verify."""

from ._core import (
    Circuit,
    ColoringInstance,
    CompiledQfl,
    CompileError,
    InvalidInstance,
    ParseError,
    QflError,
    QubitLayout,
    ResourceLimit,
    UnsupportedSize,
    ValidationError,
    check_label_oracle,
    classical_feasible,
    compile_qfl,
    deserialize,
    enumerate_feasible,
    estimate_resources,
    extract_feasible_exact,
    extract_feasible_sampled,
    parse_instance,
    qubits_per_vertex,
    run_suite,
    sample_counts,
    so_truth_table,
    statevector,
)

try:
    from ._core import __version__
except ImportError:  # built without VERSION_INFO
    __version__ = "0.0.0"
