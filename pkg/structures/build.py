"""Regenerate the sample structure files in this directory."""

import json
from pathlib import Path

from lila import gerstenhaber as gh, linfty
from lila.cli import dumps, structure_to_json
from lila.nijenhuis import alpha_from_table
from lila.symforms import FormalSum

HERE = Path(__file__).parent


def write(name, doc):
    (HERE / name).write_text(dumps(doc))


def main():
    # exterior algebra of aff(1) with the Schouten bracket, and the bivector e0^e1
    A = gh.affine()
    W = gh.WedgeAlgebra(2)
    write("aff_schouten.json", structure_to_json("gla", gh.to_l2(A, W)))
    write("aff_pi.json", structure_to_json("form", FormalSum.vector(W.mono((0, 1)))))

    # string Lie algebra of so(3): E_-2 = Q, l3 = the Cartan 3-cocycle
    q = linfty.Lie2Quadruple(1, 3, bracket={(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (2, 0): [0, 1, 0]},
                             omega={(0, 1, 2): [1]})
    write("string_so3.json", structure_to_json("lie-n", q.to_linfty()))
    alpha = alpha_from_table(q, {(0, 1): [1], (1, 2): [2]})
    write("string_alpha.json", structure_to_json("form", alpha))

    write("volume_r3.json", {"kind": "nplectic", "data": {"m": 3, "n": 2, "omega": [[[0, 1, 2], "1"]]}})
    write("cech_z2.json", {"kind": "cocycle", "data": {
        "G": [[0, 1], [1, 0]], "H": [[0]], "rho": [0, 0], "action": [[0, 1]],
        "nerve": {"complete": 3},
        "cochain": {"h": [[0, 1, 0], [0, 2, 0], [1, 2, 0]], "g": [[0, 1, 2, 1]]}}})


if __name__ == "__main__":
    main()
