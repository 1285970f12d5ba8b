"""Run the empirical pipeline on the bundled synthetic returns.

Three state-years are included. One uses fusion ballot lines, a blank
line and an uncontested district. One has a non-major winner and FPTP
already proportional. The last is too small to keep.
"""

import csv
import json
import tempfile
from pathlib import Path

from misrep.empirics import batch_run, exclusions_path

data = Path(__file__).resolve().parents[1] / 'tests' / 'fixtures' / 'empirics'

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / 'report.csv'
    batch_run(data / 'races', data / 'baseline', out, decimal_digits=3)
    for row in csv.DictReader(out.open()):
        if row['missing_point'] == 'true':
            print(f"{row['state']} {row['year']}: FPTP already proportional, no weights")
            continue
        print(f"{row['state']} {row['year']}: {row['s_f']} FPTP seats vs {row['s_pr']} PR, "
              f"{row['overrep_party']} overrepresented")
        print(f"    switching weights {row['w_first']}, {row['w_second']}, {row['w_third']}; "
              f"PR from {row['w_pr']}; average {row['avg3']}")
    log = json.loads(exclusions_path(out).read_text())
    for ex in log['exclusions']:
        print(f"{ex['state']} {ex['year']} excluded: {ex['reason']}")
