#!/usr/bin/env python3
"""Print the split presentation of every builtin under one configuration.

    python3 scripts/split_catalog.py --config arity
"""

import argparse

from operad_forge.acceptance import builtin_names
from operad_forge.catalog import builtin
from operad_forge.configurations import parse_config
from operad_forge.render import render_presentation
from operad_forge.splitting import split_presentation


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config", default="arity")
    ap.add_argument("--names", nargs="*", help="restrict to these builtins")
    args = ap.parse_args()
    C = parse_config(args.config)
    for name in args.names or builtin_names():
        S = split_presentation(builtin(name), C)
        print(f"# {S.name}: {len(S.generators)} generators, {len(S.relations)} relations")
        print(render_presentation(S))
        print()


if __name__ == "__main__":
    main()
