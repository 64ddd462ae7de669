from .runfile import (RunRecord, RunfileError, dumps, load, make_record, parse,
                      write_record)
from .suites import (TableCell, band_endpoints, load_reference, printed_count,
                     run_min, run_neb, run_sweep_alpha, run_table)

__all__ = [
    "RunRecord", "RunfileError", "dumps", "parse", "load", "make_record",
    "write_record",
    "TableCell", "band_endpoints", "load_reference", "printed_count",
    "run_min", "run_neb", "run_sweep_alpha", "run_table",
]
