#!/usr/bin/env python3
"""Regenerate the packaged JSON fixtures under src/fracops/fixtures/.

Series fixtures pin the stock inputs used by the identity suite; the
quadrature goldens pin integral-route values (node-doubled) over a gamma
ladder where the Gauss-Jacobi rule is well inside its fast-convergence
regime. Run from the repository root:

    python3 tools/gen_fixtures.py
"""

import json
import pathlib

from fracops.fracdiff import OperatorParams
from fracops.quadrature import QuadratureConfig, oracle_eval
from fracops.series import (
    exp_times_z_series,
    identity_series,
    koebe_series,
    kummer_series,
    make_builtin,
    monomial_series,
    save_series_fixture,
)

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "fracops" / "fixtures"

SERIES_FIXTURES = {
    "series_identity.json": identity_series(16),
    "series_koebe_alpha1.json": koebe_series(1.0, 64),
    "series_koebe_alpha2.json": koebe_series(2.0, 64),
    "series_exp_times_z.json": exp_times_z_series(32),
    "series_kummer.json": kummer_series(1.3, 0.9, 48),
}

GOLDEN_GAMMAS = (0.0, 1.0, 1.7, 2.5, 3.0)
GOLDEN_BETA_TAU = ((0.65, 0.30), (0.9, 0.85))
GOLDEN_INPUTS = (
    {"kind": "koebe", "params": {"alpha": 1.0}, "order": 200, "z": (0.2, -0.35)},
    {"kind": "monomial", "power": 3, "order": 8, "z": (-0.4, 0.1)},
)
NODE_COUNT = 64


def build_input(spec):
    if spec["kind"] == "monomial":
        return monomial_series(spec["power"], spec["order"])
    return make_builtin(spec["kind"], spec["order"], **spec.get("params", {}))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, ps in SERIES_FIXTURES.items():
        save_series_fixture(ps, OUT / name)
        print("wrote", name)

    entries = []
    for gamma in GOLDEN_GAMMAS:
        for beta, tau in GOLDEN_BETA_TAU:
            p = OperatorParams(beta, tau, gamma)
            cfg = QuadratureConfig.for_params(p, node_count=NODE_COUNT)
            for spec in GOLDEN_INPUTS:
                f = build_input(spec)
                z = complex(*spec["z"])
                val = oracle_eval(p, f, z, cfg)
                entry = {
                    "params": p.to_json_dict(),
                    "input": {k: v for k, v in spec.items() if k != "z"},
                    "z": [z.real, z.imag],
                    "node_count": NODE_COUNT,
                    "value": [val.real, val.imag],
                }
                entries.append(entry)
    doc = {"entries": entries}
    with open(OUT / "quad_goldens.json", "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")
    print(f"wrote quad_goldens.json ({len(entries)} entries)")


if __name__ == "__main__":
    main()
