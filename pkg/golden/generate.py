"""Regenerate the golden CLI samples in this directory: python3 golden/generate.py"""
from pathlib import Path

from pumpsteer.cli import main

HERE = Path(__file__).resolve().parent

# (output file, argv); every command at its default settings plus a few variants
SAMPLES = [
    ("overlaps.csv", ["overlaps"]),
    ("overlaps.json", ["overlaps", "--format", "json"]),
    ("integrals.json", ["integrals"]),
    ("coupling.csv", ["coupling"]),
    ("cm.csv", ["cm"]),
    ("cm_tmsv.json", ["cm", "--b", "1", "--theta", "0", "--format", "json"]),
    ("photons.csv", ["photons"]),
    ("steer.json", ["steer"]),
    ("steer_3_to_12.json", ["steer", "--a", "3", "--bpart", "1,2"]),
    ("classify_pair.json", ["classify-pair", "--a", "2", "--bpart", "3", "--theta-pi", "0.34375", "--b", "0.875", "--c", "0.846"]),
    ("genuine.json", ["genuine", "--t", "0.2"]),
    ("genuine_half.json", ["genuine", "--t", "0.2", "--quad-scale", "half"]),
    ("scan_pair.csv", ["scan", "--x-num", "12", "--y-num", "12"]),
    ("scan_genuine.json", ["scan", "--task", "genuine", "--t", "0.2", "--x-num", "5", "--y-num", "5", "--format", "json"]),
    ("multi_scan.csv", ["multi-scan", "--x-num", "12", "--y-num", "12"]),
    ("fig4.ppm", ["multi-scan", "--preset", "fig4", "--x-num", "50", "--format", "ppm"]),
]


def generate(target: Path = HERE) -> list[Path]:
    out = []
    for name, argv in SAMPLES:
        path = target / name
        code = main([*argv, "--output", str(path)])
        if code:
            raise SystemExit(f"{name}: exit code {code}")
        out.append(path)
    return out


if __name__ == "__main__":
    for p in generate():
        print(p.name)
