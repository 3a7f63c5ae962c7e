import json
import sys
from pathlib import Path

import jsonschema

data, schema_dir = Path(sys.argv[1]), Path(sys.argv[2])
schema = json.loads((schema_dir / "datum.schema.json").read_text())
files = sorted(data.glob("*.json"))
if not files:
    sys.exit("no datum files")
for f in files:
    jsonschema.validate(json.loads(f.read_text()), schema)
bad = {"version": "torlang-datum/1", "kind": "torus", "name": "x"}
try:
    jsonschema.validate(bad, schema)
    sys.exit("schema accepted a torus without a group")
except jsonschema.ValidationError:
    pass
