import subprocess
import sys

import numpy as np
import pytest

from planestego.cli import main
from planestego.imageio import save_image, synth_image
from planestego.numsys import System, canonicalize


@pytest.fixture
def cover(tmp_path):
    path = tmp_path / "cover.pgm"
    save_image(synth_image("uniform", 64, 64, seed=4), path)
    return path


@pytest.fixture
def message(tmp_path):
    path = tmp_path / "msg.bin"
    path.write_bytes(b"attack at dawn\x00\xff")
    return path


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


@pytest.mark.parametrize("system, plane", [("binary", 1), ("new", 1), ("Fibonacci", 2), ("cf", 4)])
def test_embed_extract_round_trip(tmp_path, cover, message, capsys, system, plane):
    stego = tmp_path / "stego.png"
    out = tmp_path / "out.bin"
    args = ["--system", system, "--plane", str(plane), "--key", "0x1f"]
    assert main(["embed", str(cover), str(message), "--out", str(stego), *args]) == 0
    stats = kv(capsys.readouterr().out)
    assert int(stats["bits_embedded"]) == 32 + 8 * 16
    assert int(stats["pixels_visited"]) == int(stats["bits_embedded"]) + int(stats["pixels_skipped"])
    assert float(stats["psnr_db"]) > 0
    assert main(["extract", str(stego), "--out", str(out), *args]) == 0
    assert out.read_bytes() == message.read_bytes()


def test_raw_round_trip(tmp_path, cover, message, capsys):
    stego = tmp_path / "s.pgm"
    out = tmp_path / "o.bin"
    args = ["--system", "prime", "--plane", "1", "--key", "7", "--framing", "raw"]
    assert main(["embed", str(cover), str(message), "--out", str(stego), *args]) == 0
    assert main(["extract", str(stego), "--out", str(out), "--raw-length", "128", *args]) == 0
    assert out.read_bytes() == message.read_bytes()


def test_empty_message(tmp_path, cover, capsys):
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    assert main(["embed", str(cover), str(empty), "--out", str(tmp_path / "s.pgm"),
                 "--system", "new", "--plane", "2"]) == 0
    assert kv(capsys.readouterr().out)["bits_embedded"] == "32"


@pytest.mark.parametrize("argv", [
    ["embed", "c.pgm", "m", "--out", "s.pgm", "--system", "binary", "--plane", "9"],
    ["embed", "c.pgm", "m", "--out", "s.pgm", "--system", "roman", "--plane", "1"],
    ["embed", "c.pgm", "m", "--out", "s.pgm", "--system", "binary", "--plane", "1", "--key", "-3"],
    ["extract", "s.pgm", "--out", "m", "--system", "binary", "--plane", "1", "--framing", "raw"],
    ["capacity", "--synth", "plasma:1:4x4", "--out", "-"],
    ["capacity", "--out", "-"],
    ["table", "new", "0"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 64


def test_capacity_exceeded(tmp_path, capsys):
    cover = tmp_path / "tiny.pgm"
    save_image(synth_image("uniform", 8, 8, seed=1), cover)
    big = tmp_path / "big.bin"
    big.write_bytes(b"x" * 64)
    assert main(["embed", str(cover), str(big), "--out", str(tmp_path / "s.pgm"),
                 "--system", "binary", "--plane", "1"]) == 2
    err = capsys.readouterr().err
    assert "required=544 available=64" in err
    assert not (tmp_path / "s.pgm").exists()


def test_wrong_key_framing_error(tmp_path, capsys):
    cover = tmp_path / "c.pgm"
    save_image(np.full((16, 16), 255, np.uint8), cover)
    out = tmp_path / "o.bin"
    # all-ones LSBs spell a header of 2**32 - 1 bits under any key
    assert main(["extract", str(cover), "--out", str(out), "--system", "binary",
                 "--plane", "1", "--key", "12345"]) == 2


def test_io_errors(tmp_path, message, capsys):
    assert main(["embed", str(tmp_path / "missing.pgm"), str(message), "--out",
                 str(tmp_path / "s.pgm"), "--system", "binary", "--plane", "1"]) == 74
    bad = tmp_path / "rgb.png"
    from PIL import Image
    Image.new("RGB", (4, 4)).save(bad)
    assert main(["embed", str(bad), str(message), "--out", str(tmp_path / "s.pgm"),
                 "--system", "binary", "--plane", "1"]) == 74


def test_empty_directory(tmp_path):
    assert main(["capacity", str(tmp_path), "--out", str(tmp_path / "c.csv")]) == 66
    assert main(["capacity", "--synth", "uniform:1:4x4", "--count", "0", "--out", "-"]) == 66


def test_capacity_directory(tmp_path, capsys):
    save_image(synth_image("gradient", 16, 16), tmp_path / "b.png")
    save_image(synth_image("uniform", 16, 16, seed=2), tmp_path / "a.pgm")
    out = tmp_path / "cap.csv"
    assert main(["capacity", str(tmp_path), "--system", "binary", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "image,system,plane,capacity_bits,total_pixels,capacity_fraction"
    assert [l.split(",")[0] for l in lines[1:]] == ["a.pgm"] * 8 + ["b.png"] * 8


def test_quality_synth_deterministic(tmp_path):
    a, b, avg = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "avg.csv"
    args = ["quality", "--synth", "uniform:7:32x32", "--count", "3", "--key", "5"]
    assert main([*args, "--out", str(a), "--avg-out", str(avg)]) == 0
    assert main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "image,system,plane,bits_embedded,mse,psnr_db"
    assert len(lines) == 1 + 3 * 7 * 8
    assert {l.split(",")[0] for l in lines[1:]} == {"uniform_7", "uniform_8", "uniform_9"}
    assert avg.read_text().startswith("system,plane,mean_psnr_db,images,inf_images\n")


def test_binary_only_rows(tmp_path):
    out = tmp_path / "q.csv"
    assert main(["quality", "--synth", "uniform:1:16x16", "--count", "2", "--system", "binary",
                 "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 2 * 8


def test_compare(capsys):
    assert main(["compare", "--synth", "uniform:1:64x64", "--count", "2", "--out", "-"]) == 0
    text = capsys.readouterr().out
    assert "binary,Yes,Yes" in text and "new,Yes,No" in text


def test_table(capsys):
    assert main(["table", "binary", "5", "5"]) == 0
    assert capsys.readouterr().out == "5\t00000101\n"
    assert main(["table", "fibonacci", "0", "255"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 256 and not any("11" in r.split("\t")[1] for r in rows)
    assert main(["table", "new", "0", "44"]) == 0
    rows = dict(r.split("\t") for r in capsys.readouterr().out.splitlines())
    assert rows["44"] == str(canonicalize(44, System.NEW)) == "1000000001000000"


def test_console_script(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "planestego", "table", "new", "12", "12"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "12\t0000000001000000\n"
    proc = subprocess.run([sys.executable, "-m", "planestego", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "embed" in proc.stdout
