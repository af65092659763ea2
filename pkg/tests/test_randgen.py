"""Random-complex generator: determinism, validity, engine-vs-brute agreement."""

from cablecalc.iota import brute_oracle, complex_to_dict, d_results, homology_summary, validate
from cablecalc.randgen import random_iota_complex


def test_deterministic_per_seed():
    a = random_iota_complex(1234)
    b = random_iota_complex(1234)
    assert complex_to_dict(a) == complex_to_dict(b)
    c = random_iota_complex(1235)
    assert complex_to_dict(a) != complex_to_dict(c)


def test_generated_complexes_are_valid():
    for seed in range(60):
        ic = random_iota_complex(seed)
        assert validate(ic).ok  # also re-checked inside the generator


def test_engine_matches_brute_on_random_complexes():
    for seed in range(40):
        ic = random_iota_complex(seed)
        fast = d_results(ic, check=False)
        n = homology_summary(ic, check=False).torsion_exponent
        slow = brute_oracle(ic, truncation=n + len(ic.complex.generators), check=False)
        assert fast == slow, (seed, complex_to_dict(ic))


def test_invariant_chain_on_random_complexes():
    for seed in range(100, 140):
        res = d_results(random_iota_complex(seed), check=False)
        assert res.lower <= res.d <= res.upper
