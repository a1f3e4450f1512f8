# src/metrics.py
from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

REGISTRY = CollectorRegistry()

CLOSURE_COUNT = Counter('prozeta_closures_total', 'Subgroup closures computed', registry=REGISTRY)
SUBGROUP_COUNT = Counter('prozeta_subgroups_total', 'Subgroups enumerated', registry=REGISTRY)
VERIFY_MISMATCHES = Counter('prozeta_verify_mismatches_total', 'Appendix rows with term diffs', ['row'],
                            registry=REGISTRY)
COMMAND_LATENCY = Histogram('prozeta_command_seconds', 'CLI command wall time (s)', ['command'],
                            registry=REGISTRY)


def write_metrics(path: str) -> None:
    write_to_textfile(path, REGISTRY)
