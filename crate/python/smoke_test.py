"""Smoke test for the leakfix Python extension.

Build and run:
    cargo build --release -p leakfix-py
    cp target/release/libleakfix.so python/leakfix.so
    python3 python/smoke_test.py
"""

import json
import pathlib
import sys
import tempfile

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import leakfix  # noqa: E402

HASH_ROUTER = """import React from 'react';

class HashRouter extends React.Component {
  componentDidMount() {
    window.addEventListener('hashchange', this.onHashChange);
  }

  onHashChange = () => this.setState({ hash: window.location.hash });
}
"""


def main():
    assert leakfix.leak_kinds() == [
        "FP1_Subscription",
        "FP2_EventListener",
        "FP3a_Timeout",
        "FP3b_Interval",
        "FP4_AnimationFrame",
    ]

    result = leakfix.repair_source(HASH_ROUTER, "HashRouter.jsx")
    assert result.changed
    assert "window.removeEventListener('hashchange', this.onHashChange);" in result.text
    [cand] = result.report.candidates
    assert (cand.kind, cand.line, cand.status) == ("FP2_EventListener", 5, "repaired"), cand
    again = leakfix.repair_source(result.text, "HashRouter.jsx")
    assert not again.changed and again.report.repaired == 0

    only_timers = leakfix.repair_source(HASH_ROUTER, "HashRouter.jsx", patterns=["fp3a"])
    assert not only_timers.changed

    with tempfile.TemporaryDirectory() as tmp:
        root = pathlib.Path(tmp)
        (root / "src").mkdir()
        (root / "src" / "HashRouter.jsx").write_text(HASH_ROUTER)
        (root / "src" / "broken.js").write_text("function (")
        out = root / "report.json"

        report = leakfix.scan_project(str(root), json_out=str(out))
        assert report.total_detected == 1 and report.total_repaired == 1
        assert report.parse_errors == 1
        assert [f.path for f in report.files] == ["src/HashRouter.jsx", "src/broken.js"]
        assert report.totals["FP2_EventListener"] == {"detected": 1, "repaired": 1, "skipped": 0}
        assert (root / "src" / "HashRouter.jsx").read_text() == HASH_ROUTER, "dry run must not write"
        assert leakfix.Report.from_json(out.read_text()) == report
        assert json.loads(report.to_json())["files"][0]["path"] == "src/HashRouter.jsx"

        leakfix.scan_project(str(root), mode="write")
        second = leakfix.scan_project(str(root), mode="write")
        assert second.total_repaired == 0
        print(second.summary("write"), end="")

    try:
        leakfix.scan_project(".", mode="sideways")
    except ValueError:
        pass
    else:
        raise AssertionError("bad mode accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
