# Produce a run-file: a full trajectory recording that the plotting frontend
# (and anything else) can parse back without touching this package. The same
# files fall out of `pesmin-bench ... --out <dir> --traj`.

import sys

from pesmin.bench import runfile, suites

out_dir = sys.argv[1] if len(sys.argv) > 1 else "runs"

record = suites.run_min("booth", "fire", traj=True,
                        command="demo: record_a_run.py")
path = runfile.write_record(record, out_dir)
print(f"wrote {path}")

# round-trip: the parsed record reproduces the text byte for byte
loaded = runfile.load(path)
assert runfile.dumps(loaded) == runfile.dumps(record)

print(f"  id          {loaded.id}")
print(f"  evaluations {loaded.meta['n_force_evals']} ({loaded.meta['stop_reason']})")
print(f"  final       ({loaded.meta['final']})")
print(f"  history     {len(loaded.norm_history)} rows, "
      f"trajectory {len(loaded.trajectory)} rows")
first_n, first_f = loaded.norm_history[0]
last_n, last_f = loaded.norm_history[-1]
print(f"  |F|: {first_f:.3g} (eval {first_n}) -> {last_f:.3g} (eval {last_n})")
