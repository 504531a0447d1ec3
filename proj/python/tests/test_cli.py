import json
import subprocess


def run(cli, *args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True, timeout=300)


def test_validate_and_solve(cli, tmp_path, two_colors):
    inst = tmp_path / "inst.json"
    inst.write_text(two_colors)
    assert run(cli, "validate", "--instance", inst).returncode == 0

    path = tmp_path / "path.json"
    r = run(cli, "solve", "--instance", inst, "--eps", "1/1000", "--seed", 2, "-o", path)
    assert r.returncode == 0, r.stderr
    r = run(cli, "verify", "--instance", inst, "--path", path, "--eps", "1/1000")
    assert r.returncode == 0
    assert "PASS" in r.stdout


def test_gen_solve_map_back(cli, tmp_path, ch_two_agents):
    ch = tmp_path / "ch.json"
    ch.write_text(ch_two_agents)
    inst, meta, path, sol = (tmp_path / n for n in ("inst.json", "meta.json", "path.json", "sol.json"))
    assert run(cli, "gen", "--from", ch, "--reduction", "overlapping", "-o", inst, "--meta", meta).returncode == 0
    assert run(cli, "solve", "--instance", inst, "--eps", "1/10000", "-o", path).returncode == 0
    r = run(cli, "map-back", "--meta", meta, "--path", path, "--from", ch, "--eps", "1/1000", "-o", sol)
    assert r.returncode == 0, r.stdout + r.stderr
    assert "cuts" in json.loads(sol.read_text())


def test_exit_codes(cli, tmp_path, two_colors):
    assert run(cli, "validate", "--instance", tmp_path / "missing.json").returncode == 2
    assert run(cli, "frobnicate").returncode == 2

    inst = tmp_path / "inst.json"
    inst.write_text(two_colors)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"z": ["1", "0"], "x": ["0"]}))
    assert run(cli, "verify", "--instance", inst, "--path", bad, "--eps", "1/1000").returncode == 1

    r = run(cli, "solve", "--instance", inst, "--method", "grid", "--turns", 6, "--grid-resolution", 400)
    assert r.returncode == 3
