#!/usr/bin/env python3
"""Rewrite fixtures/manifest.json with the SHA-256 of every other fixture."""

import hashlib
import json
import pathlib
import sys

root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures")
files = {
    p.relative_to(root).as_posix(): hashlib.sha256(p.read_bytes()).hexdigest()
    for p in sorted(root.rglob("*"))
    if p.is_file() and p.name != "manifest.json"
}
with open(root / "manifest.json", "w") as out:
    json.dump({"algorithm": "sha256", "files": files}, out, indent=2)
    out.write("\n")
