#!/usr/bin/env python3
"""Search the 4-dimensional 3-Lie family for a weight-zero Rota-Baxter
operator and print the induced 3-pre-Lie structure with its check."""

import json

from operad_forge.acceptance import criterion_12, three_lie_instance
from operad_forge.catalog import builtin
from operad_forge.configurations import parse_config
from operad_forge.rota_baxter import induce_split_algebra


def main() -> None:
    instance = three_lie_instance()
    c, A, op, how = instance
    B = induce_split_algebra(A, op, parse_config("arity"), builtin("3Lie"), weight=0)
    print(f"coefficients c = {c} ({how})")
    print(f"operator: {op}")
    print(json.dumps(B.to_json(), ensure_ascii=False))
    print(criterion_12(instance).to_text())


if __name__ == "__main__":
    main()
