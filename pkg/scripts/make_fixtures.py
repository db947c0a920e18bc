"""Write the JSON algebra fixtures used in the examples and the CLI docs.

    python scripts/make_fixtures.py --out fixtures
"""

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from postlie.algebra import LinearEndo, affine_vector_fields, dump_algebra, gl, sl, triangular_r


@dataclass(frozen=True)
class FixtureConfig:
    out: Path = Path("fixtures")


def fixtures():
    for name, L in (("gl2", gl(2)), ("gl3", gl(3)), ("sl2", sl(2)), ("sl3", sl(3))):
        yield name, dump_algebra(L, triangular_r(L))
    L = sl(2)
    yield "sl2_zero_r", dump_algebra(L, LinearEndo.zero(L.dim))
    A, P = affine_vector_fields(2)
    yield "affine2_prelie", dump_algebra(A, product=P)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=FixtureConfig.out)
    cfg = FixtureConfig(**vars(ap.parse_args()))
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name, data in fixtures():
        path = cfg.out / f"{name}.json"
        path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
        print(path)


if __name__ == "__main__":
    main()
