from ._core import (
    ConfigError,
    ProtocolError,
    compiled_tester_rounds,
    correct_cycles,
    decompose,
    distance,
    generate,
    run_experiment,
)

__all__ = [
    "ConfigError",
    "ProtocolError",
    "compiled_tester_rounds",
    "correct_cycles",
    "decompose",
    "distance",
    "generate",
    "run_experiment",
]
