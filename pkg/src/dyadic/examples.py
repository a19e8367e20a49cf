"""Bundled example programs."""

from importlib import resources

from .parser import parse_program

NAMES = ("head_ground", "dyadic_pair", "problematic_atoms", "transitive_closure")


def example_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("dyadic").joinpath("data", f"{name}.dtgd").read_text()


def load_example(name: str):
    return parse_program(example_text(name))
