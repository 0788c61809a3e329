#!/usr/bin/env python3
"""Smoke test for the burstcode_py extension module.

Builds nothing itself: run `cargo build -p burstcode-py` first, then
`python3 python/smoke_test.py`. The script locates the compiled cdylib in
the cargo target directory, stages it under an importable name, and
exercises every exported binding once.
"""

import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    """Copies the built extension into a temp dir as burstcode_py.so."""
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libburstcode_py.so", "libburstcode_py.dylib", "burstcode_py.dll")
    ]
    built = next((path for path in candidates if path.exists()), None)
    if built is None:
        sys.exit("extension not found - run `cargo build -p burstcode-py` first")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="burstcode-py-"))
    shutil.copy2(built, stage / f"burstcode_py{suffix}")
    return stage


sys.path.insert(0, str(stage_module()))

import burstcode_py as bc  # noqa: E402


def check_words_and_balls() -> None:
    x = bc.Word.parse("120110212", 3)
    assert len(x) == 9 and x.q == 3
    assert x.symbols == [1, 2, 0, 1, 1, 0, 2, 1, 2]
    assert x == bc.Word(3, x.symbols)
    assert str(x) == "120110212"

    # the closed form must match enumeration, for any center
    assert bc.ball_size(9, 3, 2, 1) == len(bc.ball_members(x, 2, 1))
    assert bc.ball_size(5, 2, 2, 1) == 5

    z = bc.apply_burst(x, 4, 2, [0])
    assert str(z) == "12000212"
    assert bc.is_burst_outcome(x, z, 2, 1)
    assert not bc.is_burst_outcome(x, bc.Word.parse("00000000", 3), 2, 1)


def check_codes() -> None:
    # the worked staged decode: a (2,1)-burst rewrote "41" as "3"
    x = bc.Word.parse("132434412132", 5)
    code = bc.Code.for_word("qary_tt1", x, 2, 1)
    assert code.family == "qary_tt1" and code.n == 12 and code.q == 5
    assert code.is_member(x)
    assert code.received_len == 11
    z = bc.Word.parse("13243432132", 5)
    assert code.decode(z) == x

    # instance-file JSON roundtrip, shared with the CLI
    again = bc.Code.from_json(code.to_json())
    assert again == code and again.residues == code.residues

    # a P-bounded binary class decodes through its window
    x = bc.Word.parse("0110100101", 2)
    code = bc.Code.for_word("bin_tt1", x, 2, 1, p=6)
    z = bc.apply_burst(x, 3, 2, [1])
    assert code.decode(z, window=(1, 6)) == x

    try:
        bc.Code.for_word("nope", x, 2, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown family must raise ValueError")


def check_search_and_bounds() -> None:
    code, size, classes = bc.param_search("c22", 6, 2, 2, 2)
    assert size >= 1 and classes >= 1
    # pigeonhole: the best class is at least the average class size
    assert size * code.space_size >= 2**6
    achieved = bc.code_redundancy(6, 2, size)
    assert bc.sphere_packing_redundancy(6, 2, 2, 2) <= achieved + 1e-9
    assert achieved <= code.guarantee_bits + 1e-9


def check_permutations() -> None:
    sigma = bc.Permutation([3, 1, 4, 2, 6, 5, 7])
    assert len(sigma) == 7
    # 2*6! + 1*4! + 1*2! smaller-to-the-right terms, plus one for 1-basing
    assert sigma.lex_rank() == 1467
    assert bc.Permutation.identity(7).lex_rank() == 1
    ranks = sigma.ranking_sequence(2)
    assert ranks.q == 6 and len(ranks) == 5

    code = bc.TbsdCode.for_permutation(sigma, 2)
    assert code.is_member(sigma)
    z = bc.apply_stable_burst_deletion(sigma, 3, 2)
    assert z == [3, 1, 6, 5, 7]
    assert code.decode(z) == sigma

    leq = bc.LeqTbsdCode.for_permutation(sigma, 2)
    for t in (1, 2):
        for pos in range(1, len(sigma) - t + 2):
            z = bc.apply_stable_burst_deletion(sigma, pos, t)
            assert leq.decode(z) == sigma, f"t={t} pos={pos}"


def main() -> None:
    check_words_and_balls()
    check_codes()
    check_search_and_bounds()
    check_permutations()
    print("smoke test passed")


if __name__ == "__main__":
    main()
