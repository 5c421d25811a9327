"""Print the special facial sets of the four hexagon realizations and the CLI self-test verdict."""

import json
import sys

from titsfaces import facial, golden
from titsfaces.cli import selftest


def fmt(J):
    return "{" + ",".join(str(i + 1) for i in sorted(J)) + "}"


def main() -> int:
    ok = True
    for case in golden.CASES:
        fam = facial.enumerate_facial(case.root_base())
        special = sorted(fam.special_facial, key=lambda J: (len(J), sorted(J)))
        match = set(special) == case.special_zero_based() and len(fam.all_facial) == case.n_facial
        ok &= match
        print(f"case ({case.name}): {len(special)} special, {len(fam.all_facial)} facial  {'ok' if match else 'MISMATCH'}")
        print("  " + " ".join(fmt(J) for J in special))
    passed, results = selftest()
    print("selftest:", "passed" if passed else json.dumps(results, indent=2))
    return 0 if ok and passed else 1


if __name__ == "__main__":
    sys.exit(main())
