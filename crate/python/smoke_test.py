#!/usr/bin/env python3
"""Smoke test for the cone_certify_py extension module.

Builds nothing itself: expects the cdylib under target/{release,debug}.
Run from the repository root (or anywhere) after

    cargo build -p cone-certify-py --release

Usage: python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    repo = Path(__file__).resolve().parent.parent
    candidates = [
        repo / "target" / "release" / "libcone_certify_py.so",
        repo / "target" / "debug" / "libcone_certify_py.so",
        repo / "target" / "release" / "libcone_certify_py.dylib",
        repo / "target" / "debug" / "libcone_certify_py.dylib",
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("extension not built; run: cargo build -p cone-certify-py --release")
    stage = Path(tempfile.mkdtemp(prefix="cone_certify_py_"))
    suffix = ".so" if lib.suffix == ".so" else ".so"  # CPython loads .so on mac too
    shutil.copy2(lib, stage / f"cone_certify_py{suffix}")
    sys.path.insert(0, str(stage))
    import cone_certify_py

    return cone_certify_py


def main():
    cc = load_module()

    # Spectrum arithmetic.
    s = cc.Spectrum([(1.0, 5), (-1.0, 5), (0.0, 4)])
    assert s.alpha_sq() == 10.0
    assert s.dimension() == 14

    # Profile solve: the dimension-12 anchor.
    r = cc.solve_angle(12, alpha2=10.0, model="exp")
    theta = r["outcome"]["Vanishes"]["theta"]
    assert math.degrees(theta) < 9.0
    assert abs(math.degrees(theta) - 8.73955) < 1e-3
    assert r["max_residual"] < 1e-8

    # No-vanishing case keeps its typed reason.
    r = cc.solve_angle(6, alpha2=4.0, model="F")
    assert "DiscriminantNegative" in r["outcome"]["NoVanishing"]

    # Exact spectrum via the class.
    spec = cc.Spectrum([(1.0, 2), (-1.0, 2), (0.0, 1)])
    r = cc.solve_angle(6, model="exact", spectrum=spec)
    assert math.degrees(r["outcome"]["Vanishes"]["theta"]) < 25.0

    # Certified upper bound picks the best strategy.
    theta, strategy = cc.theta_upper_bound(10, 6.0)
    assert strategy == "F" and 0 < theta < math.pi / 4

    # Certificates.
    cert = cc.certify_focal(4, 1, 2, side="minus")
    assert cert.minimizing and cert.cone_dim == 5
    assert cert.theta0_upper_deg < 27.0
    assert cert.recheck()

    cert = cc.certify_focal(4, 1, 1)
    assert not cert.minimizing and cert.theta0_upper_deg is None

    cert = cc.certify_union(4, 2, 2)
    assert cert.minimizing and cert.cone_dim == 7

    cert = cc.certify_product("g=3,m=2; g=3,m=2")
    assert cert.minimizing
    assert abs(cert.tan_phi_sq_lb - 7.0 / 9.0) < 1e-12
    import json

    assert json.loads(cert.to_json())["verdict"] == "Minimizing"

    # Product quantities.
    spec = cc.minimal_product("g=3,m=2; sphere=4")
    assert spec["total_dim"] == 8
    assert abs(sum(spec["weights_sq"]) - 1.0) < 1e-12

    # Catalog data.
    assert cc.clifford_delta(3) == 4
    assert cc.clifford_delta(9) == 16
    fams = cc.enumerate_g4_families(7)
    assert (3, 4, "OT-FKM") in fams
    assert cc.wang_minimizing(2, 1, 5, 8) == (False, False)
    assert cc.wang_minimizing(2, 2, 4, 8) == (True, True)
    cat = cc.catalog_dump(5)
    assert any(f["g"] == 6 for f in cat["families"])

    # Table: alpha^2 = 0 row is all stars, (12, 10) is below 9 degrees.
    t = cc.angle_table([7, 12], [0.0, 10.0])
    assert t["cells_deg"][0] == [None, None]
    assert t["cells_deg"][1][1] < 9.0

    # The aggregated claim report.
    report = cc.verify_claims()
    assert report["all_pass"], [c for c in report["claims"] if not c["pass"]]
    assert len(report["claims"]) == 30

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
