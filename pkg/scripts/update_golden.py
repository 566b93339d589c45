"""Regenerate tests/golden/ from the bundled catalog.

Run after an intentional change to delta or form output, then review the diff.
"""
import pathlib

from ccomplex.cli import catalog_names, cmd_delta, cmd_form
from ccomplex.exactlinalg import SingularMatrixError

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"


def render(name):
    out = {"delta": cmd_delta(f"catalog:{name}")[1]}
    try:
        out["form"] = cmd_form(f"catalog:{name}")[1]
    except SingularMatrixError:
        pass
    return out


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name in catalog_names():
        for verb, text in render(name).items():
            path = GOLDEN / f"{name}.{verb}.txt"
            path.write_text(text + "\n")
            print(f"wrote {path.relative_to(GOLDEN.parent.parent)}")
