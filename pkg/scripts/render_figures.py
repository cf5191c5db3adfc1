"""Write SVG drawings of the small examples into a directory.

    python3 scripts/render_figures.py --out figures
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

from sepsys.combi import combi_from_w_collection
from sepsys.cubillage import cubillage_13, mirror_cubillage
from sepsys.fragmentation import fragment
from sepsys.subsets import S, rim
from sepsys.svg import combi_svg, section_svg, tiling_svg, write_svg
from sepsys.tiling import antistandard_tiling, standard_tiling


@dataclass
class FigureConfig:
    out: Path = Path("figures")


def render(cfg: FigureConfig) -> list[Path]:
    cfg.out.mkdir(parents=True, exist_ok=True)
    w24 = rim(4) | {S("2"), S("24"), S("124")}
    jobs = {
        "tiling_standard_4.svg": tiling_svg(standard_tiling(4)),
        "tiling_antistandard_4.svg": tiling_svg(antistandard_tiling(4)),
        "combi_w24.svg": combi_svg(combi_from_w_collection(w24, 4)),
    }
    for name, q in (("q13", cubillage_13()), ("q24", mirror_cubillage(cubillage_13()))):
        f = fragment(q)
        for h in range(1, 4):
            jobs[f"section_{name}_level{h}.svg"] = section_svg(f, h)
    written = []
    for name, text in jobs.items():
        path = cfg.out / name
        write_svg(text, path)
        written.append(path)
    return written


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=FigureConfig.out)
    for p in render(FigureConfig(ap.parse_args().out)):
        print(p)


if __name__ == "__main__":
    main()
