"""Regenerate the checked-in golden inputs and reports under goldens/.

Run from the repository root after an intentional output change:

    python3 scripts/make_goldens.py
"""

from __future__ import annotations

import json
from pathlib import Path

from tilecoh import catalog
from tilecoh.cli import parse_input, run

ROOT = Path(__file__).resolve().parent.parent / "goldens"

# (example, command, extra input fields)
CASES = [
    ("fibonacci", "cohomology", {}),
    ("thue-morse", "cohomology", {}),
    ("period-doubling", "cohomology", {}),
    ("pinwheel-line", "cohomology", {}),
    ("solenoid-graph", "cohomology", {}),
    ("eyeglasses", "cohomology", {}),
    ("three-square", "cohomology", {}),
    ("chair", "cohomology", {}),
    ("fibonacci", "frequencies", {"lengths": {"a": (1 + 5**0.5) / 2, "b": 1.0}}),
    ("fibonacci", "deform", {}),
    ("thue-morse", "deform", {}),
    ("fibonacci", "regularity", {"patches": ["ab", "b"]}),
    ("thue-morse", "regularity", {"patches": ["a", "b"]}),
    ("thue-morse", "diagnose", {}),
    ("fibonacci", "diagnose", {}),
]


def case_id(example: str, command: str) -> str:
    return f"{example}.{command}"


def main() -> None:
    (ROOT / "inputs").mkdir(parents=True, exist_ok=True)
    (ROOT / "reports").mkdir(parents=True, exist_ok=True)
    manifest = []
    for example, command, extra in CASES:
        cid = case_id(example, command)
        doc = {**catalog.example_document(example), **extra, "name": cid}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        (ROOT / "inputs" / f"{cid}.json").write_text(text)
        report = run(parse_input(text), command)
        for fmt in ("text", "json"):
            ext = "txt" if fmt == "text" else "json"
            (ROOT / "reports" / f"{cid}.{ext}").write_text(report.render(fmt))
        manifest.append({"id": cid, "command": command})
    (ROOT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(manifest)} golden cases to {ROOT}")


if __name__ == "__main__":
    main()
