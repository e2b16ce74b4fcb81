import hashlib
import json

# Renders a report payload with a fixed key order so that identical inputs
# produce identical bytes.
def canonical_json(payload):
    return json.dumps(payload, sort_keys=False, indent=2, ensure_ascii=True)

def generate_report_key(payload):
    s = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    h = hashlib.new("sha256")
    h.update(s.encode("ascii"))
    return h.hexdigest()
