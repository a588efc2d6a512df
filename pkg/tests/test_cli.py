"""Command-line behavior: verbs, files, exit codes."""

import json
import threading

from siot.cli import main


def _write(tmp_path, name, data):
    p = tmp_path / name
    p.write_bytes(data)
    return str(p)


def test_gen_params_stdout(capsys):
    assert main(["gen-params", "--la", "3", "--ea", "3",
                 "--lb", "2", "--eb", "4"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["p"] == 431


def test_keygen_to_file(tmp_path):
    out = tmp_path / "key.json"
    assert main(["keygen", "--preset", "p431", "--side", "A",
                 "--seed", "0a0b", "--export-secret", "-o", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["side"] == "A" and "secret_r" in obj
    assert set(obj["public"]) == {"curve", "g", "h"}


def test_run_local_and_verify(tmp_path, capsys):
    m0 = _write(tmp_path, "m0", b"naught")
    m1 = _write(tmp_path, "m1", b"unity!")
    outf = str(tmp_path / "delivered.bin")
    code = main(["run-local", "--preset", "p431", "--choice", "1",
                 "--msg0", m0, "--msg1", m1, "--seed", "beef",
                 "--offline", str(tmp_path / "off"), "-o", outf])
    assert code == 0
    assert (tmp_path / "delivered.bin").read_bytes() == b"unity!"
    capsys.readouterr()
    assert main(["verify-transcript",
                 str(tmp_path / "off" / "transcript.jsonl"),
                 "--preset", "p431"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_verify_rejects_tampered_transcript(tmp_path, capsys):
    m0 = _write(tmp_path, "m0", b"aa")
    m1 = _write(tmp_path, "m1", b"bb")
    main(["run-local", "--preset", "p431", "--choice", "0",
          "--msg0", m0, "--msg1", m1, "--seed", "3133",
          "--offline", str(tmp_path)])
    path = tmp_path / "transcript.jsonl"
    lines = path.read_bytes().splitlines()
    rec = json.loads(lines[2])
    assert "nonce" in rec["msg"]["body"]
    rec["msg"]["body"]["nonce"] = "00" * 32
    lines[2] = json.dumps(rec).encode()
    path.write_bytes(b"\n".join(lines) + b"\n")
    capsys.readouterr()
    assert main(["verify-transcript", str(path), "--preset", "p431"]) == 2
    assert json.loads(capsys.readouterr().out)["ok"] is False


def test_attack_verbs(capsys):
    assert main(["attack", "brute-force", "--preset", "p431",
                 "--seed", "05"]) == 0
    assert json.loads(capsys.readouterr().out)["match"] is True
    assert main(["attack", "distinguisher", "--preset", "p431"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] \
        == "indistinguishable"
    assert main(["attack", "distinguisher", "--preset", "p431",
                 "--violate"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "leaked-b"
    assert main(["attack", "dishonest-bob", "--preset", "p431"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["crafted"]["j_equal"] is True


def test_baseline_verb(tmp_path, capsys):
    m0 = _write(tmp_path, "m0", b"base zero")
    m1 = _write(tmp_path, "m1", b"base one.")
    tpath = str(tmp_path / "bt.jsonl")
    assert main(["baseline-ot", "run", "--choice", "0", "--msg0", m0,
                 "--msg1", m1, "--seed", "77", "--transcript", tpath]) == 0
    assert "base zero" in capsys.readouterr().out
    assert (tmp_path / "bt.jsonl").exists()


def test_usage_errors_exit_four(tmp_path, capsys):
    assert main(["no-such-verb"]) == 4
    assert main(["keygen", "--preset", "p431"]) == 4        # missing --side
    assert main(["run-local", "--preset", "p431", "--choice", "1",
                 "--msg0", str(tmp_path / "absent"),
                 "--msg1", str(tmp_path / "absent")]) == 4  # unreadable file
    assert main(["keygen", "--preset", "p431", "--side", "A",
                 "--seed", "abc"]) == 4                     # odd-length hex
    assert main(["send", "--preset", "p431", "--msg0", "x", "--msg1", "y",
                 "--listen", "a:1", "--connect", "b:2"]) == 4
    capsys.readouterr()


def test_dead_port_is_transport_error(tmp_path, capsys):
    m0 = _write(tmp_path, "m0", b"x")
    m1 = _write(tmp_path, "m1", b"y")
    assert main(["send", "--preset", "p431", "--connect", "127.0.0.1:9",
                 "--msg0", m0, "--msg1", m1]) == 3
    capsys.readouterr()


def test_networked_send_receive(tmp_path, capsys):
    m0 = _write(tmp_path, "m0", b"wire zero")
    m1 = _write(tmp_path, "m1", b"wire one.")
    got = str(tmp_path / "got.bin")
    addr = "127.0.0.1:19651"
    codes = {}

    def rx():
        codes["r"] = main(["receive", "--preset", "p431", "--listen", addr,
                           "--choice", "1", "--seed", "aa", "-o", got])

    th = threading.Thread(target=rx)
    th.start()
    import time
    deadline = time.time() + 5
    codes["s"] = None
    while time.time() < deadline:
        code = main(["send", "--preset", "p431", "--connect", addr,
                     "--msg0", m0, "--msg1", m1, "--seed", "bb"])
        if code != 3:    # transport error until the listener is up
            codes["s"] = code
            break
        time.sleep(0.1)
    th.join(30)
    capsys.readouterr()
    assert codes["s"] == 0 and codes["r"] == 0
    assert (tmp_path / "got.bin").read_bytes() == b"wire one."
