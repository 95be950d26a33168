import json
import math

import numpy as np
import pytest

from cyclewalk import formats
from cyclewalk.canonicalizer import CanonicalParams, canonicalize
from cyclewalk.cli import main
from cyclewalk.phase_ring import angle_distance
from cyclewalk.walk_core import (
    CycleWalk,
    GaugeTransform,
    apply_gauge,
    build_canonical_matrix,
    random_cycle_walk,
    random_gauge,
)


def write_walk(path, walk):
    path.write_text(formats.walk_to_json(walk.matrix))
    return str(path)


def write_params(path, n, r, theta, alpha):
    path.write_text(json.dumps({"n": n, "r": r, "theta": theta, "alpha": alpha, "degenerate": False}))
    return str(path)


def shift_walk(n):
    return CycleWalk(build_canonical_matrix([1.0] * n, [0.0] * n, 0.0))


# --- formats ---------------------------------------------------------------


def test_walk_json_round_trip_exact():
    walk = random_cycle_walk(5, 3)
    text = formats.walk_to_json(walk.matrix)
    back = formats.walk_matrix_from_json(json.loads(text))
    assert np.array_equal(back, walk.matrix)
    obj = json.loads(text)
    assert obj["n"] == 5 and len(obj["matrix"]) == 10 and len(obj["matrix"][0]) == 10


def test_numbers_use_17_significant_digits():
    text = formats.dumps({"x": 0.1})
    assert text == '{"x": 0.10000000000000001}\n'


def test_params_round_trip():
    p, _ = canonicalize(random_cycle_walk(6, 2))
    back = formats.params_from_json(json.loads(formats.params_to_json(p)))
    assert back == p


def test_witness_round_trip():
    g = random_gauge(4, np.random.default_rng(1))
    back = formats.witness_from_json(json.loads(formats.witness_to_json(g)))
    assert np.array_equal(back.blocks, g.blocks) and back.global_phase == g.global_phase


def test_walk_reader_rejects_bad_shape():
    with pytest.raises(formats.FormatError):
        formats.walk_matrix_from_json({"n": 3, "matrix": [[[0, 0]]]})


def test_csv_headers():
    assert formats.spectrum_csv([1 + 0j]).startswith("re,im,arg\n1,0,0\n")


# --- gen -------------------------------------------------------------------


def test_gen_writes_unitary_walk(tmp_path, capsys):
    params = write_params(tmp_path / "p.json", 4, [0.5] * 4, [0, 0.3, 1.0, 2.0], 1.0)
    out = tmp_path / "w.json"
    assert main(["gen", params, "-o", str(out)]) == 0
    m = formats.walk_matrix_from_json(json.loads(out.read_text()))
    assert np.max(np.abs(m.conj().T @ m - np.eye(8))) < 1e-12
    assert "unitarity_residual=" in capsys.readouterr().out


def test_gen_rejects_r_out_of_range(tmp_path, capsys):
    params = write_params(tmp_path / "p.json", 3, [0.5, 1.5, 0.5], [0, 0, 0], 0.0)
    assert main(["gen", params, "-o", str(tmp_path / "w.json")]) == 3
    assert "r[2]" in capsys.readouterr().err


def test_gen_warns_on_non_canonical(tmp_path, capsys):
    params = write_params(tmp_path / "p.json", 3, [0.5] * 3, [0, 3.0, 0], 0.0)
    assert main(["gen", params, "-o", str(tmp_path / "w.json")]) == 0
    assert "warning" in capsys.readouterr().err


def test_gen_missing_file(tmp_path):
    assert main(["gen", str(tmp_path / "nope.json")]) == 2


def test_gen_bad_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["gen", str(bad)]) == 2


# --- canon -----------------------------------------------------------------


def test_canon_round_trip(tmp_path):
    params = write_params(tmp_path / "p.json", 5, [0.2, 0.4, 0.6, 0.8, 0.3],
                          [0, 0.5, 2.0, 4.0, 6.0], 0.9)
    walk = tmp_path / "w.json"
    assert main(["gen", params, "-o", str(walk)]) == 0
    out = tmp_path / "c.json"
    assert main(["canon", str(walk), "-o", str(out)]) == 0
    got = json.loads(out.read_text())
    assert got["r"] == pytest.approx([0.2, 0.4, 0.6, 0.8, 0.3], abs=1e-9)
    assert all(angle_distance(a, b) < 1e-9 for a, b in zip(got["theta"], [0, 0.5, 2.0, 4.0, 6.0]))
    assert angle_distance(got["alpha"], 0.9) < 1e-9
    assert (tmp_path / "c.witness.json").exists()


def test_canon_identity_not_a_cycle_walk(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(formats.walk_to_json(np.eye(6)))
    assert main(["canon", str(path), "-o", str(tmp_path / "c.json")]) == 3
    assert "not a cycle walk" in capsys.readouterr().err


def test_canon_scrambled_matches_unscrambled(tmp_path):
    a = write_walk(tmp_path / "a.json", random_cycle_walk(6, 5))
    b = write_walk(tmp_path / "b.json", random_cycle_walk(6, 5, scramble=True))
    assert main(["canon", a, "-o", str(tmp_path / "ca.json")]) == 0
    assert main(["canon", b, "-o", str(tmp_path / "cb.json")]) == 0
    pa = json.loads((tmp_path / "ca.json").read_text())
    pb = json.loads((tmp_path / "cb.json").read_text())
    assert pa["r"] == pytest.approx(pb["r"], abs=1e-9)
    assert all(angle_distance(x, y) < 1e-9 for x, y in zip(pa["theta"], pb["theta"]))


def test_canon_witness_file_verifies(tmp_path):
    walk = random_cycle_walk(5, 8, scramble=True)
    path = write_walk(tmp_path / "w.json", walk)
    assert main(["canon", path, "-o", str(tmp_path / "c.json"),
                 "--witness", str(tmp_path / "g.json")]) == 0
    g = formats.witness_from_json(json.loads((tmp_path / "g.json").read_text()))
    p = formats.params_from_json(json.loads((tmp_path / "c.json").read_text()))
    target = build_canonical_matrix(p.r, p.theta, p.alpha)
    assert np.max(np.abs(apply_gauge(g, walk).matrix - target)) < 1e-10


def test_canon_tolerance_too_tight_fails_verification(tmp_path):
    path = write_walk(tmp_path / "w.json", random_cycle_walk(9, 1, scramble=True))
    assert main(["canon", path, "-o", str(tmp_path / "c.json"), "--tol", "1e-30"]) in (3, 4)


# --- equiv -----------------------------------------------------------------


def test_equiv_scrambled(tmp_path, capsys):
    a = write_walk(tmp_path / "a.json", random_cycle_walk(5, 1))
    b = write_walk(tmp_path / "b.json", random_cycle_walk(5, 1, scramble=True))
    assert main(["equiv", a, b, "--witness", str(tmp_path / "g.json")]) == 0
    assert capsys.readouterr().out.startswith("EQUIVALENT")
    assert (tmp_path / "g.json").exists()


def test_equiv_theta3_differs(tmp_path, capsys):
    r = [0.3, 0.6, 0.5, 0.7]
    u1 = CycleWalk(build_canonical_matrix(r, [0, 0.2, 1.0, 2.0], 0.5))
    u2 = CycleWalk(build_canonical_matrix(r, [0, 0.2, 1.1, 2.0], 0.5))
    a = write_walk(tmp_path / "a.json", u1)
    b = write_walk(tmp_path / "b.json", u2)
    assert main(["equiv", a, b]) == 1
    out = capsys.readouterr().out
    assert out.startswith("NOT_EQUIVALENT")
    assert float(out.split("=")[1]) == pytest.approx(0.1, abs=1e-9)


def test_equiv_degenerate(tmp_path, capsys):
    u1 = shift_walk(4)
    u2 = apply_gauge(GaugeTransform.diagonal([0.0, 0.4, 1.0, 2.0], [0.3, 0.0, 0.0, 0.9], 0.2), u1)
    a = write_walk(tmp_path / "a.json", u1)
    b = write_walk(tmp_path / "b.json", u2)
    code = main(["equiv", a, b])
    out = capsys.readouterr().out
    assert (code, out.split()[0]) in ((0, "EQUIVALENT"), (5, "INDETERMINATE_DEGENERATE"))


def test_equiv_size_mismatch(tmp_path):
    a = write_walk(tmp_path / "a.json", random_cycle_walk(4, 1))
    b = write_walk(tmp_path / "b.json", random_cycle_walk(5, 1))
    assert main(["equiv", a, b]) == 3


# --- simulate --------------------------------------------------------------


def test_simulate_shift(tmp_path, capsys):
    walk = write_walk(tmp_path / "w.json", shift_walk(4))
    state = tmp_path / "s.json"
    state.write_text(json.dumps([[1, 0]] + [[0, 0]] * 7))
    assert main(["simulate", walk, "--state", str(state), "--steps", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "step,vertex,probability"
    rows = [l.split(",") for l in lines[1:]]
    assert len(rows) == 12
    mass = {(int(s), int(v)) for s, v, p in rows if float(p) == 1.0}
    assert mass == {(0, 1), (1, 2), (2, 3)}


def test_simulate_zero_steps(tmp_path, capsys):
    walk = write_walk(tmp_path / "w.json", shift_walk(3))
    state = tmp_path / "s.json"
    state.write_text(json.dumps({"amplitudes": [[0, 0], [0, 1]] + [[0, 0]] * 4}))
    assert main(["simulate", walk, "--state", str(state), "--steps", "0"]) == 0
    assert capsys.readouterr().out == "step,vertex,probability\n0,1,1\n0,2,0\n0,3,0\n"


def test_simulate_renormalizes_with_warning(tmp_path, capsys):
    walk = write_walk(tmp_path / "w.json", shift_walk(3))
    state = tmp_path / "s.json"
    state.write_text(json.dumps([[1.0000001, 0]] + [[0, 0]] * 5))
    assert main(["simulate", walk, "--state", str(state), "--steps", "1"]) == 0
    assert "renormalizing" in capsys.readouterr().err


def test_simulate_equivalent_walks_same_probabilities(tmp_path):
    rng = np.random.default_rng(2)
    u1 = random_cycle_walk(5, 2)
    g = random_gauge(5, rng)
    u2 = apply_gauge(g, u1)
    psi = rng.normal(size=10) + 1j * rng.normal(size=10)
    psi /= np.linalg.norm(psi)
    outs = []
    for k, (walk, state) in enumerate([(u1, psi), (u2, g.apply_state(psi))]):
        wpath = write_walk(tmp_path / f"w{k}.json", walk)
        spath = tmp_path / f"s{k}.json"
        spath.write_text(formats.dumps(list(state)))
        out = tmp_path / f"d{k}.csv"
        assert main(["simulate", wpath, "--state", str(spath), "--steps", "10", "-o", str(out)]) == 0
        outs.append(np.loadtxt(out, delimiter=",", skiprows=1))
    assert np.allclose(outs[0], outs[1], atol=1e-9)


def test_simulate_wrong_state_length(tmp_path):
    walk = write_walk(tmp_path / "w.json", shift_walk(3))
    state = tmp_path / "s.json"
    state.write_text(json.dumps([[1, 0]]))
    assert main(["simulate", walk, "--state", str(state), "--steps", "1"]) == 2


# --- random ----------------------------------------------------------------


def test_random_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["random", "--n", "5", "--seed", "7", "-o", str(a)]) == 0
    assert main(["random", "--n", "5", "--seed", "7", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_random_translation_invariant(tmp_path):
    out = tmp_path / "w.json"
    assert main(["random", "--n", "6", "--seed", "3", "--translation-invariant", "-o", str(out)]) == 0
    walk = CycleWalk(formats.walk_matrix_from_json(json.loads(out.read_text())))
    p, _ = canonicalize(walk)
    assert all(angle_distance(t, 0.0) < 1e-9 for t in p.theta)


def test_random_scramble_equivalent(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["random", "--n", "5", "--seed", "4", "-o", str(a)])
    main(["random", "--n", "5", "--seed", "4", "--scramble", "-o", str(b)])
    assert main(["equiv", str(a), str(b)]) == 0


@pytest.mark.parametrize("argv", [["random", "--n", "2", "--seed", "1"],
                                  ["random", "--seed", "1"],
                                  ["random", "--n", "x", "--seed", "1"]])
def test_random_bad_flags(argv):
    assert main(argv) == 2


# --- spectrum --------------------------------------------------------------


def test_spectrum_shift3(tmp_path):
    walk = write_walk(tmp_path / "w.json", shift_walk(3))
    out = tmp_path / "s.csv"
    assert main(["spectrum", walk, "-o", str(out)]) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (6, 3)
    eig = data[:, 0] + 1j * data[:, 1]
    assert np.allclose(np.sort(np.round(np.angle(eig), 9)),
                       np.sort(np.round(np.angle([np.exp(2j * math.pi * k / 3) for k in range(3)] * 2), 9)))


def test_spectrum_gauge_pair(tmp_path):
    u1 = random_cycle_walk(4, 6)
    g = random_gauge(4, np.random.default_rng(6))
    spectra = []
    for k, walk in enumerate([u1, apply_gauge(g, u1)]):
        out = tmp_path / f"s{k}.csv"
        assert main(["spectrum", write_walk(tmp_path / f"w{k}.json", walk), "-o", str(out)]) == 0
        d = np.loadtxt(out, delimiter=",", skiprows=1)
        spectra.append(d[:, 0] + 1j * d[:, 1])
    from cyclewalk.dynamics import spectra_match
    assert spectra_match(spectra[1], np.exp(1j * g.global_phase) * spectra[0], tol=1e-7)


def test_spectrum_non_unitary(tmp_path):
    path = tmp_path / "w.json"
    path.write_text(formats.walk_to_json(2 * np.eye(6)))
    assert main(["spectrum", str(path)]) == 3
