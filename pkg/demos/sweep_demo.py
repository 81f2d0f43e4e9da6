# Drive the CLI end to end: write a config, sweep the eavesdropper gain
# magnitude, and print the CSV rows. Plots are meant to be made externally
# from this CSV (gnuplot, pandas, whatever is at hand).

import json
import subprocess
import sys
import tempfile
from pathlib import Path

config = {
    "channel": {
        "w1": {"re": 1.0, "im": 0.0},
        "w2": {"re": 2.0, "im": 0.0},
        "legit_adc": {"real": {"thresholds": [0.0], "outputs": [-1.0, 1.0]},
                      "imag": {"thresholds": [0.0], "outputs": [-1.0, 1.0]}},
        "eave_adc": {"real": {"thresholds": [-0.5, 1.0], "outputs": [0.0, 1.0, 2.0]},
                     "imag": {"thresholds": [0.0], "outputs": [-1.0, 1.0]}},
        "mode": "real",
    },
    "sweep": {"axis": "w2_mag", "start": 1.1, "stop": 3.5, "num": 13},
}

with tempfile.TemporaryDirectory() as tmp:
    cfg_path = Path(tmp) / "sweep.json"
    csv_path = Path(tmp) / "sweep.csv"
    cfg_path.write_text(json.dumps(config))
    proc = subprocess.run(
        [sys.executable, "-m", "wiretap_adc.cli", "sweep",
         "--config", str(cfg_path), "--format", "csv", "--out", str(csv_path)],
        capture_output=True, text=True,
    )
    if proc.returncode != 0:
        print(proc.stderr, file=sys.stderr)
        raise SystemExit(proc.returncode)
    print(csv_path.read_text())

# the secrecy rate grows with the eavesdropper's gain here: a stronger
# eavesdropper saturates sooner, which is exactly what the construction rides
