import json
import subprocess
import sys

import pytest

from corpus import HEXAGON
from prismatoid.cli import main
from prismatoid.exact_linalg import AffineMap
from prismatoid.generators import make_cube
from prismatoid.polytope import load_polytope_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


class TestGen:
    def test_cube(self, capsys):
        code, out, _ = run(capsys, "gen", "cube", "3")
        assert code == 0
        assert len(json.loads(out)["vertices"]) == 8

    def test_hanner_diamond(self, capsys):
        code, out, _ = run(capsys, "gen", "hanner", "(S I I)")
        assert code == 0
        assert set(load_polytope_json(out).vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}

    @pytest.mark.parametrize("argv", [("simplex", "0"), ("cube", "x"), ("hanner", "(P I)")])
    def test_bad_arguments(self, capsys, argv):
        assert run(capsys, "gen", *argv)[0] == 2

    def test_unknown_kind(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["gen", "prism", "3"])
        assert err.value.code == 2

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "c.json"
        code, out, _ = run(capsys, "gen", "cross", "2", "--output", str(target))
        assert code == 0 and out == ""
        assert len(json.loads(target.read_text())["vertices"]) == 4


class TestCheck:
    def test_cube(self, capsys, files):
        code, out, _ = run(capsys, "check", files("c.json", make_cube(3).to_json()))
        assert code == 0
        assert "dimension: 3" in out and "vertices: 8" in out and "facets: 6" in out
        assert "centrally symmetric: yes, center (1/2, 1/2, 1/2)" in out
        assert "prismatoid: yes" in out and "perfect prismatoid: yes" in out

    def test_hexagon(self, capsys, files):
        code, out, _ = run(capsys, "check", files("h.json", HEXAGON.to_json()))
        assert code == 1
        assert "perfect prismatoid: no" in out
        assert "normal (1, 0) takes values -1 0 1" in out

    def test_single_vertex(self, capsys, files):
        assert run(capsys, "check", files("p.json", {"dim": 3, "vertices": [["0", "0", "0"]]}))[0] == 3

    @pytest.mark.parametrize("text", ["{", '{"dim": 2, "vertices": [["a", "0"]]}', "[]"])
    def test_malformed(self, capsys, files, text):
        assert run(capsys, "check", files("bad.json", text))[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "check", str(tmp_path / "absent.json"))[0] == 2

    def test_h_representation_input(self, capsys, files):
        doc = {"dim": 1, "facets": [{"normal": ["1"], "offset": "1"}, {"normal": ["-1"], "offset": "1"}]}
        assert run(capsys, "check", files("seg.json", doc))[0] == 0


class TestNormalize:
    def test_cross_polytope(self, capsys, files, tmp_path):
        src = files("x.json", {"dim": 3, "vertices": [["1", "0", "0"], ["-1", "0", "0"], ["0", "1", "0"],
                                                      ["0", "-1", "0"], ["0", "0", "1"], ["0", "0", "-1"]]})
        map_path = tmp_path / "map.json"
        code, out, _ = run(capsys, "normalize", src, "--map-output", str(map_path))
        assert code == 0
        image = load_polytope_json(out)
        assert len(image.vertices) == 6
        assert all(c in (0, 1) for v in image.vertices for c in v)
        T = AffineMap.from_json(json.loads(map_path.read_text()))
        assert T.is_invertible()

    def test_cube_identity(self, capsys, files):
        code, _, err = run(capsys, "normalize", files("c.json", make_cube(2).to_json()))
        assert code == 0
        assert AffineMap.from_json(json.loads(err)) == AffineMap.identity(2)

    def test_hexagon(self, capsys, files):
        assert run(capsys, "normalize", files("h.json", HEXAGON.to_json()))[0] == 1


class TestEmbedVerify:
    def test_cube(self, capsys, tmp_path):
        src, cert = tmp_path / "c.json", tmp_path / "cert.json"
        run(capsys, "gen", "cube", "3", "--output", str(src))
        code, out, _ = run(capsys, "embed", str(src), "--output", str(cert), "--oracle")
        assert code == 0
        assert "sphere points: 8" in out and "lattice index: 1" in out and "oracle: agrees" in out
        assert len(json.loads(cert.read_text())["vertices"]) == 8
        assert run(capsys, "verify", str(cert)) == (0, "valid\n", "")

    def test_simplex4(self, capsys, tmp_path):
        src = tmp_path / "s.json"
        run(capsys, "gen", "simplex", "4", "--output", str(src))
        code, out, err = run(capsys, "embed", str(src), "--oracle")
        assert code == 0
        assert len(json.loads(out)["vertices"]) == 5
        assert "sphere points: 5" in err

    def test_hexagon(self, capsys, files):
        assert run(capsys, "embed", files("h.json", HEXAGON.to_json()))[0] == 1

    def test_inflated_radius(self, capsys, tmp_path):
        src, cert = tmp_path / "c.json", tmp_path / "cert.json"
        run(capsys, "gen", "cube", "3", "--output", str(src))
        run(capsys, "embed", str(src), "--output", str(cert))
        doc = json.loads(cert.read_text())
        doc["radius2"] = "5/2"
        cert.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(cert))
        assert code == 1
        assert out.startswith("invalid") and "interior point" in out

    def test_truncated(self, capsys, tmp_path):
        src, cert = tmp_path / "c.json", tmp_path / "cert.json"
        run(capsys, "gen", "cube", "2", "--output", str(src))
        run(capsys, "embed", str(src), "--output", str(cert))
        text = cert.read_text()
        cert.write_text(text[: len(text) // 2])
        assert run(capsys, "verify", str(cert))[0] == 2


class TestFvector:
    @pytest.mark.parametrize(
        "kind, param, expected",
        [
            ("cube", "3", "8 12 6 | total 27 | 3^3 = 27 | equality"),
            ("simplex", "3", "4 6 4 | total 15"),
            ("hanner", "(S I I)", "4 4 | total 9 | 3^2 = 9 | equality"),
        ],
    )
    def test_reports(self, capsys, tmp_path, kind, param, expected):
        src = tmp_path / "p.json"
        run(capsys, "gen", kind, param, "--output", str(src))
        code, out, _ = run(capsys, "fvector", str(src))
        assert code == 0 and out == expected + "\n"

    def test_hexagon_strict_inequality(self, capsys, files):
        assert run(capsys, "fvector", files("h.json", HEXAGON.to_json()))[1] == "6 6 | total 13 | 3^2 = 9 | satisfied\n"

    def test_flat(self, capsys, files):
        doc = {"dim": 3, "vertices": [["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"]]}
        assert run(capsys, "fvector", files("f.json", doc))[0] == 3


def shell(args, stdin=None):
    return subprocess.run([sys.executable, "-m", "prismatoid", *args], input=stdin,
                          capture_output=True, text=True, timeout=120)


@pytest.mark.parametrize("kind, param", [("cube", "3"), ("cross", "3"), ("simplex", "4"), ("hanner", "(P (S I I) I)")])
def test_pipeline(kind, param):
    gen = shell(["gen", kind, param])
    assert gen.returncode == 0
    assert shell(["check", "-"], gen.stdout).returncode == 0
    norm = shell(["normalize", "-"], gen.stdout)
    assert norm.returncode == 0
    embed = shell(["embed", "-"], norm.stdout)
    assert embed.returncode == 0
    assert shell(["verify", "-"], embed.stdout).returncode == 0


def test_deterministic_output(tmp_path):
    outputs = []
    for k in range(2):
        src, cert = tmp_path / f"p{k}.json", tmp_path / f"c{k}.json"
        assert shell(["gen", "hanner", "(S (P I I) I)", "--output", str(src)]).returncode == 0
        assert shell(["embed", str(src), "--output", str(cert)]).returncode == 0
        outputs.append((src.read_bytes(), cert.read_bytes()))
    assert outputs[0] == outputs[1]
