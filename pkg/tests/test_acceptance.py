"""
Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines bypass output capture, so they show up in a plain ``pytest`` run.
"""

import itertools
import random
import time
from contextlib import contextmanager

import numpy as np

from propcodes.cli import main
from propcodes.field import FieldSpec
from propcodes.groups import build_group, check_relation, fingerprint, match_catalog, sampled_orders
from propcodes.linear import LinearCode, hamming_code
from propcodes.propelinear import (
    Automorphism, CoordPermutation, certify_propelinear, phi_w, pi_c, pi_j_beta, verify_automorphism,
    verify_pipi,
)
from propcodes.quadratic import (
    QuadraticForm, beta_coefficients, beta_many, count_quadratics, enumerate_quadratics, parse_expression,
    random_quadratic,
)
from propcodes.vscode import VSCode, codes_equal, reconstruct_f
from propcodes.words import all_words, format_word, parse_word, words_to_index


@contextmanager
def criterion(capsys, number, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert limit is None or elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        bound = f" (limit {limit:g} s)" if limit else ""
        with capsys.disabled():
            print(f"\ncriterion {number}: {status}  {title}  [{elapsed:.2f} s{bound}]")


def word_set(code):
    return {format_word(w) for w in code.enumerate()}


def index_set(words, q):
    return np.sort(words_to_index(words, q))


def test_criterion_1_length5_example(capsys):
    with criterion(capsys, 1, "length-5 example: codewords, betas, permutations, certificate, D4xZ2", limit=1.0):
        F2 = FieldSpec(2)
        code = VSCode(LinearCode.full_space(F2, 2), parse_expression("x1*x2", F2, 2))
        words = word_set(code)
        listed = {"00000", "11001", "11110", "00111", "10000", "00011", "01110", "11101"}
        assert len(words) == 16 and listed <= words

        f = code.f
        betas = {c: beta_coefficients(f, parse_word(c, F2))[1] for c in ("01", "10", "11")}
        assert betas == {"01": (1, 0), "10": (0, 1), "11": (1, 1)}

        assert pi_c(code, (1, 1)).cycle_notation() == "(13)(24)"
        assert pi_c(code, (1, 0)).cycle_notation() == "(24)"
        assert pi_c(code, (0, 0)).cycle_notation() == "Id"

        cert = certify_propelinear(code)
        assert cert.propelinear and cert.closure_mode == "exhaustive" and cert.pairs_checked == 256

        table = build_group(code, certify=False)
        fp = fingerprint(table)
        assert (fp.order, fp.abelian, fp.order_histogram, fp.center) == (16, False, {1: 1, 2: 11, 4: 4}, 4)
        assert match_catalog(fp) == ["D4xZ2"]

        u, v = table.index("11001"), table.index("10000")
        # Phi_v Phi_u Phi_v = Phi_u^{-1}
        assert check_relation(table, [(v, 1), (u, 1), (v, 1), (u, 1)])
        assert table.mul[table.mul[v, u], v] == table.inv[u]


def test_criterion_2_two_representations(capsys):
    with criterion(capsys, 2, "zero vs x1x2+x1x3 on {000,111}: same perfect code, Z2^4 vs Z4xZ2^2", limit=1.0):
        F2 = FieldSpec(2)
        base = hamming_code(F2, 2)
        zero = VSCode(base, QuadraticForm.zero(F2, 3))
        quad = VSCode(base, parse_expression("x1*x2 + x1*x3", F2, 3))
        assert word_set(zero) == word_set(quad) and len(word_set(zero)) == 16
        assert codes_equal(zero, quad)
        for code in (zero, quad):
            rep = code.verify_perfect(mode="exhaustive")
            assert rep.verdict and rep.words_checked == 128
        assert match_catalog(fingerprint(build_group(zero))) == ["Z2^4"]
        assert match_catalog(fingerprint(build_group(quad))) == ["Z4xZ2^2"]


def test_criterion_3_ternary(capsys):
    with criterion(capsys, 3, "q=3, N=13: exhaustive perfectness, 81 base pairs, 1e5 sampled closure", limit=300.0):
        F3 = FieldSpec(3)
        base = hamming_code(F3, 2)
        assert base.size == 9
        for seed in (1, 2, 3):
            code = VSCode(base, random_quadratic(F3, base.n, seed, zero_constant=True))
            assert not code.f.is_affine()
            rep = code.verify_perfect(mode="exhaustive")
            assert rep.verdict and rep.words_checked == 3**13
            cert = certify_propelinear(code, closure_samples=100_000, seed=seed)
            assert cert.pipi is True and cert.pairs_checked == 100_000
            assert cert.propelinear and not cert.failures


def test_criterion_4_quaternary(capsys):
    with criterion(capsys, 4, "q=4, N=21: 1e5 sampled perfectness, all base pairs, element orders in {1,2,4}"):
        F4 = FieldSpec.of_order(4)
        base = hamming_code(F4, 2)
        code = VSCode(base, random_quadratic(F4, base.n, 11, zero_constant=True))
        assert code.length == 21 and not code.f.is_affine()
        rep = code.verify_perfect(mode="sampled", trials=100_000, seed=4)
        assert rep.verdict and rep.words_checked == 100_000
        assert verify_pipi(code)
        orders = sampled_orders(code, 2000, seed=4)
        assert set(orders) <= {1, 2, 4}
        assert orders[4] > 0


def _all_polynomial_tables(p, m):
    """Distinct value tables of every polynomial of degree <= 2 over GF(p), all monomials allowed."""
    points = np.array(list(itertools.product(range(p), repeat=m)), dtype=np.int64).reshape(-1, m)
    monomials = [np.ones(len(points), dtype=np.int64)]
    monomials += [points[:, i] for i in range(m)]
    monomials += [points[:, i] * points[:, j] for i in range(m) for j in range(i, m)]
    mono = np.stack(monomials)
    coeffs = np.array(list(itertools.product(range(p), repeat=len(monomials))), dtype=np.int64)
    tables = (coeffs @ mono) % p
    return len(np.unique(tables, axis=0))


def test_criterion_5_counting(tmp_path, capsys):
    with criterion(capsys, 5, "16 distinct codes on F^2 with round trips; counts 16, 128, 729", limit=10.0):
        F2 = FieldSpec(2)
        base = LinearCode.full_space(F2, 2)
        forms = list(enumerate_quadratics(F2, 2))
        assert len(forms) == 16
        codes = [VSCode(base, f) for f in forms]
        sets = [frozenset(word_set(c)) for c in codes]
        assert len(set(sets)) == 16
        for f, code in zip(forms, codes):
            table = reconstruct_f(code.enumerate(), base)
            assert table == {c: f(c) for c in base.enumerate()}

        # the same round trip through the command line for one of them
        spec, words = tmp_path / "c.json", tmp_path / "c.txt"
        assert main(["construct", "--example", "length5", "--enumerate", "--words", str(words),
                     "--out", str(spec)]) == 0
        assert main(["extract-f", str(words), "--spec", str(spec)]) == 0
        assert '"11": 1' in capsys.readouterr().out

        for (q, m), expected in {(2, 2): 16, (2, 3): 128, (3, 2): 729}.items():
            assert count_quadratics(FieldSpec(q), m) == expected
            assert _all_polynomial_tables(q, m) == expected


def _check_shift_identity(f):
    """f(x + c) = f(x) + beta0 + sum beta_i x_i over all (x, c); beta linear over all (c, d)."""
    spec, n = f.field, f.n
    add, mul = spec.add_table, spec.mul_table
    points = all_words(spec, n)
    assert np.array_equal(words_to_index(points, spec.q), np.arange(len(points)))
    fx = f.eval_many(points)
    beta0 = np.array([beta_coefficients(f, tuple(int(v) for v in c))[0] for c in points], dtype=np.uint8)
    betas = beta_many(f, points)
    step = max(1, 2**18 // len(points))
    for lo in range(0, len(points), step):
        cs = points[lo : lo + step]
        shifted = add[cs[:, None, :], points[None, :, :]]  # (C, X, n)
        sum_idx = words_to_index(shifted.reshape(-1, n), spec.q).reshape(len(cs), len(points))
        lhs = fx[sum_idx]
        rhs = add[fx[None, :], beta0[lo : lo + step, None]]
        for i in range(n):
            rhs = add[rhs, mul[betas[lo : lo + step, i][:, None], points[None, :, i]]]
        if not np.array_equal(lhs, rhs):
            return False
        # linearity, with d ranging over all points
        if not np.array_equal(betas[sum_idx], add[betas[lo : lo + step, None, :], betas[None, :, :]]):
            return False
    return True


def test_criterion_6_shift_identity(capsys):
    with criterion(capsys, 6, "100 seeded forms: shift identity over all (x, c), beta linearity over all pairs",
                   limit=30.0):
        rng = random.Random(6)
        fields = {q: FieldSpec.of_order(q) for q in (2, 3, 4)}
        for case in range(100):
            q = rng.choice((2, 3, 4))
            n = rng.randint(1, 6)
            f = random_quadratic(fields[q], n, seed=case, zero_constant=rng.random() < 0.5)
            assert _check_shift_identity(f), (q, n, f.to_expression())


def _small_bases():
    F2, F3, F4 = FieldSpec(2), FieldSpec(3), FieldSpec.of_order(4)
    return [
        LinearCode.full_space(F2, 2),
        hamming_code(F2, 2),
        LinearCode.full_space(F2, 3),
        hamming_code(F2, 3),
        LinearCode.full_space(F3, 1),
        LinearCode.full_space(F3, 2),
        LinearCode.from_generator(F3, [[1, 2, 1]]),
        LinearCode.full_space(F4, 1),
    ]


def test_criterion_7_conjugation(capsys):
    with criterion(capsys, 7, "20 seeded cases: Pi_j^beta C(H,f) = C(H, f + beta x_j) as sets", limit=30.0):
        rng = random.Random(7)
        bases = _small_bases()
        for case in range(20):
            base = bases[case % len(bases)]
            spec = base.field
            f = random_quadratic(spec, base.n, seed=100 + case)
            j, beta = rng.randrange(base.n), rng.randrange(1, spec.q)
            code, target = VSCode(base, f), VSCode(base, f.plus_linear(j, beta))
            assert code.size <= 2**12
            words = code.codeword_array()
            image = words[:, pi_j_beta(code, j, beta).src]
            assert np.array_equal(index_set(image, spec.q), index_set(target.codeword_array(), spec.q))
            # the images are distinct codewords, so the map is onto
            assert len(np.unique(words_to_index(image, spec.q))) == code.size


def test_criterion_8_negative_controls(tmp_path, capsys):
    with criterion(capsys, 8, "negative controls: non-perfect witness, corrupted file, bare translation"):
        F2 = FieldSpec(2)
        code = VSCode(LinearCode.full_space(F2, 2), parse_expression("x1*x2", F2, 2))
        rep = code.verify_perfect(mode="exhaustive")
        assert not rep.verdict and rep.violations
        witness, count = rep.violations[0]
        ball = [parse_word(witness, F2)] + [
            tuple(1 - x if t == i else x for t, x in enumerate(parse_word(witness, F2))) for i in range(5)
        ]
        assert sum(code.contains(b) for b in ball) == count != 1

        spec, words = tmp_path / "h.json", tmp_path / "h.txt"
        main(["construct", "--example", "hamming7-zero", "--enumerate", "--words", str(words), "--out", str(spec)])
        lines = words.read_text().splitlines()
        lines[3] = lines[3][:-1] + str(1 - int(lines[3][-1]))
        bad = tmp_path / "bad.txt"
        bad.write_text("\n".join(lines) + "\n")
        capsys.readouterr()
        assert main(["extract-f", str(bad), "--spec", str(spec)]) != 0
        assert '"consistent": false' in capsys.readouterr().out

        translation = Automorphism(F2, CoordPermutation.identity(5), parse_word("11001", F2))
        assert not verify_automorphism(code, translation)
        assert verify_automorphism(code, phi_w(code, parse_word("11001", F2)))
