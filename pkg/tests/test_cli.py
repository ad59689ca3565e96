import json
import os
import subprocess
import sys

from quatring.algebra import MultiplicationTable, matrix_ring_table, quaternion_table
from quatring.cli import main, run
from quatring.orders import Order, standard_order
from quatring.quadform import QuadraticForm
from quatring.quaternion import QuaternionAlgebra


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def cli(*argv, env=None):
    proc = subprocess.run([sys.executable, "-m", "quatring.cli", *argv], capture_output=True,
                          text=True, env=env)
    return proc.returncode, proc.stdout


def test_hilbert_all():
    r = run(["hilbert", "-a", "-1", "-b", "-1", "-v", "all"])
    assert r.status == "ok" and r.exit_code == 0
    assert r.payload == {"symbols": {"2": -1, "inf": -1}, "product": 1}
    assert run(["hilbert", "-a", "5", "-b", "2", "-v", "2"]).payload["value"] == -1


def test_jacobi():
    r = run(["jacobi", "2", "15"])
    assert r.payload == 1 and r.exit_code == 0


def test_non_associative_table(tmp_path):
    c = quaternion_table(-1, -1).to_json()
    c["c"][1][1] = ["0", "0", "1", "0"]
    code, out = cli("recognize", write(tmp_path, "bad.json", c))
    data = json.loads(out)
    assert code == 3 and data["status"] == "error"
    assert data["payload"]["code"] == "not_associative"
    assert data["payload"]["message"].startswith("associativity violated at (")


def test_usage_and_errors(tmp_path):
    assert run(["frobnicate"]).exit_code == 2
    assert run(["hilbert", "-a", "x", "-b", "1"]).exit_code == 2
    assert run(["maxorder"]).exit_code == 2
    r = run(["disc", write(tmp_path, "junk.json", "{nope")])
    assert r.exit_code == 3 and r.payload["code"] == "malformed_json"
    r = run(["disc", str(tmp_path / "missing.json")])
    assert r.exit_code == 3 and r.payload["code"] == "io"
    r = run(["demo", "factor", "25"])
    assert r.exit_code == 3 and r.payload["code"] == "precondition"


def test_decision_exit_codes(tmp_path):
    assert run(["split", "-a", "-1", "-b", "-1"]).exit_code == 1
    assert run(["conic", "-a", "-1", "-b", "-1"]).exit_code == 1
    assert run(["demo", "residuosity", "7", "15"]).exit_code == 1
    assert run(["demo", "residuosity", "4", "15"]).exit_code == 0
    O = standard_order(QuaternionAlgebra(-1, -1))
    assert run(["ismaximal", write(tmp_path, "o.json", O.to_json())]).exit_code == 1
    assert run(["recognize", write(tmp_path, "d.json", {"c": [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]})]).status == "error"


def test_round_trips(tmp_path):
    r = run(["recognize", write(tmp_path, "m2.json", matrix_ring_table().to_json())])
    assert r.status == "ok" and r.payload["ramified"] == []
    assert QuaternionAlgebra.from_json(r.payload["algebra"]).to_json() == r.payload["algebra"]

    Q = QuadraticForm((0, 0, 3), [[0, 1, 0], [1, 0, 2], [0, 2, 0]])
    r = run(["normalize", write(tmp_path, "f.json", Q.to_json()), "-p", "2"])
    assert QuadraticForm.from_json(r.payload["form"]).to_json() == r.payload["form"]

    r = run(["maxorder", "--standard", "-a", "-1", "-b", "-3"])
    assert r.payload["reduced"] == "3"
    assert Order.from_json(r.payload["order"]).to_json() == r.payload["order"]
    path = write(tmp_path, "max.json", r.payload["order"])
    assert run(["ismaximal", path]).status == "ok"
    assert run(["disc", path]).payload == {"disc": "9", "reduced": "3"}

    T = MultiplicationTable.from_json(quaternion_table(2, 3).to_json())
    assert T.to_json() == quaternion_table(2, 3).to_json()


def test_split_payload():
    r = run(["split", "-a", "2", "-b", "7"])
    assert r.status == "ok"
    assert r.payload["image_i"] and r.payload["nilpotent"]


def test_trace():
    r = run(["hilbert", "-a", "-1", "-b", "-1", "-v", "2", "--trace"])
    assert "evenhilbalg.step2" in r.trace
    assert run(["jacobi", "2", "15"]).trace is None
    r = run(["maxorder", "--standard", "-a", "-1", "-b", "-1", "--trace"])
    assert "computepmaxorder.step3b" in r.trace


def test_main_prints_json(capsys):
    assert main(["ramified", "-a", "-1", "-b", "-1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["payload"]["ramified"] == ["2", "inf"]


def test_seed_determinism():
    argv = ["conicpoint", "-p", "10007", "3", "5", "-7", "--seed", "11"]
    first = cli(*argv)
    assert first == cli(*argv)
    env = dict(os.environ, QUATRING_SEED="11")
    assert cli(*argv[:-2], env=env) == first
    a = cli("demo", "residuosity", "11", "35", "--seed", "2")
    assert a == cli("demo", "residuosity", "11", "35", "--seed", "2")
