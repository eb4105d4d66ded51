"""
Tests for equivalence.py - monomial transforms, the direct and WAM-based
monomial equivalence decisions, feedback equivalence and cross-validation.
"""

import pytest

from convequiv.equivalence import (
    CrossValidationReport,
    EquivalenceReport,
    MonomialTransform,
    cross_validate_main_theorem,
    feedback_equivalent,
    monomial_equivalent_direct,
    monomial_equivalent_wam,
    random_encoder,
    random_poly_matrix,
    random_unimodular,
    verify_monomial_witness,
)
from convequiv.fields import Automorphism, enumerate_invertible, make_field
from convequiv.polymat import (
    PolyMatrix,
    code_equal,
    degree,
    is_basic,
    is_full_row_rank,
    is_reduced,
    is_unimodular,
    popov_form,
    row_degrees,
)
from convequiv.realization import (
    FeedbackWitness,
    apply_feedback,
    apply_similarity,
    controller_form,
    mcmillan_degree,
    reconstruct_encoder,
)
from convequiv.types import (
    FieldMismatchError,
    NotBasicError,
    NotCanonicalError,
    NotReducedError,
    PreconditionError,
    SearchCapExceeded,
    ShapeError,
    ZeroForneyIndexError,
)
from convequiv.wam import compute_wam, relabel_wam

# ============================================================================
# Monomial transforms
# ============================================================================


class TestMonomialTransform:
    """Tests for the MonomialTransform group element."""

    @pytest.fixture
    def ternary_transform(self, gf3):
        return MonomialTransform(Automorphism(gf3, 0), (1, 2, 0), (2, 1, 1))

    def test_matrix(self, ternary_transform):
        """Test that P[i, perm[i]] = 1 is scaled by the scale of its column."""
        assert ternary_transform.matrix().tolist() == [[0, 1, 0], [0, 0, 1], [2, 0, 0]]

    def test_apply(self, gf3, ternary_transform):
        """Test the image of a one-row encoder."""
        G = PolyMatrix.parse(gf3, "1; z; 0")
        assert ternary_transform.apply(G).to_text() == "0; 1; z"

    def test_apply_matches_matrix_product(self, ternary_transform, ternary_encoder):
        """Test that apply agrees with multiplication by P R."""
        assert ternary_transform.apply(ternary_encoder) == (
            ternary_encoder @ ternary_transform.matrix()
        )

    def test_identity(self, gf2, rate_two_four):
        """Test that the identity transform fixes an encoder."""
        assert MonomialTransform.identity(gf2, 4).apply(rate_two_four) == rate_two_four

    def test_compose(self, gf4, rng):
        """Test that the composition applies the first transform, then the second."""
        G = PolyMatrix.parse(gf4, "1; az; a+z\n0; 1; z")
        first = MonomialTransform.random(gf4, 3, rng)
        second = MonomialTransform.random(gf4, 3, rng)
        assert first.compose(second).apply(G) == second.apply(first.apply(G))

    def test_inverse(self, gf4, rng):
        """Test that a transform followed by its inverse is the identity."""
        G = PolyMatrix.parse(gf4, "1; az; a+z\n0; 1; z")
        t = MonomialTransform(Automorphism(gf4, 1), (2, 0, 1), (2, 3, 1))
        assert t.inverse().apply(t.apply(G)) == G
        assert t.compose(t.inverse()) == MonomialTransform.identity(gf4, 3)

    def test_from_matrix(self, gf3, ternary_transform):
        """Test that a monomial matrix splits back into permutation and scales."""
        phi = Automorphism(gf3, 0)
        assert MonomialTransform.from_matrix(phi, ternary_transform.matrix()) == ternary_transform

    def test_from_matrix_rejects_non_monomial(self, gf2):
        """Test that a matrix with two entries in a row is refused."""
        with pytest.raises(ValueError, match="not monomial"):
            MonomialTransform.from_matrix(Automorphism(gf2, 0), gf2.array([[1, 1], [0, 1]]))

    def test_validation(self, gf3):
        """Test that invalid permutations and zero scales are refused."""
        with pytest.raises(ValueError, match="not a permutation"):
            MonomialTransform(Automorphism(gf3, 0), (0, 0), (1, 1))
        with pytest.raises(ValueError, match="nonzero"):
            MonomialTransform(Automorphism(gf3, 0), (0, 1), (1, 0))

    def test_to_dict(self, ternary_transform):
        """Test the JSON form of a transform."""
        assert ternary_transform.to_dict() == {
            "automorphism": "id",
            "permutation": [1, 2, 0],
            "scales": ["2", "1", "1"],
        }

    def test_length_mismatch(self, ternary_transform, rate_two_four):
        """Test that a transform only acts on encoders of its length."""
        with pytest.raises(ShapeError):
            ternary_transform.apply(rate_two_four)


# ============================================================================
# Direct method
# ============================================================================


class TestDirect:
    """Tests for monomial_equivalent_direct."""

    def test_block_pair(self, block_pair):
        """Test that equal weight enumerators do not imply equivalence."""
        report = monomial_equivalent_direct(*block_pair)

        assert report.verdict is False
        assert report.method == "direct"
        assert report.search_size == 720
        assert report.tried == 720
        assert report.elapsed is not None

    def test_planted(self, gf2, feedback_encoder):
        """Test that a transformed encoder is recognized with a valid witness."""
        t = MonomialTransform(Automorphism(gf2, 0), (2, 0, 1), (1, 1, 1))
        other = t.apply(feedback_encoder)

        report = monomial_equivalent_direct(feedback_encoder, other)

        assert report.verdict
        assert verify_monomial_witness(feedback_encoder, other, report.witness)
        assert report.tried <= report.search_size

    def test_planted_up_to_unimodular_factor(self, gf3, ternary_encoder, rng):
        """Test recognition when the image is premultiplied by a unimodular matrix."""
        t = MonomialTransform(Automorphism(gf3, 0), (1, 2, 0), (2, 1, 1))
        W = PolyMatrix.parse(gf3, "1; 2z\n0; 2")
        other = W @ t.apply(ternary_encoder)

        report = monomial_equivalent_direct(ternary_encoder, other)

        assert report.verdict
        assert code_equal(report.witness.apply(ternary_encoder), other)
        assert report.search_size == 6 * 8

    def test_frobenius_needed(self, gf4):
        """Test that a conjugate encoder needs the automorphism to be matched."""
        G = PolyMatrix.parse(gf4, "1; a; 0\n0; 1; 1")
        other = Automorphism(gf4, 1)(G)

        with_frobenius = monomial_equivalent_direct(G, other)
        assert with_frobenius.verdict
        assert code_equal(with_frobenius.witness.apply(G), other)

        without = monomial_equivalent_direct(G, other, no_automorphisms=True)
        assert without.search_size == with_frobenius.search_size // 2

    def test_different_dimensions(self, gf2, feedback_encoder):
        """Test that codes of different dimension are inequivalent without search."""
        report = monomial_equivalent_direct(feedback_encoder, PolyMatrix.parse(gf2, "1; z; 1+z"))
        assert report.verdict is False
        assert report.tried == 0

    def test_not_basic(self, gf2):
        """Test that a non-basic encoder is refused."""
        G = PolyMatrix.parse(gf2, "1+z^2; 1+z")
        with pytest.raises(NotBasicError):
            monomial_equivalent_direct(G, G)

    def test_field_mismatch(self, rate_two_four, gf3):
        """Test that encoders over different fields are refused."""
        with pytest.raises(FieldMismatchError):
            monomial_equivalent_direct(rate_two_four, PolyMatrix.parse(gf3, "1; 0; 0; 0"))

    def test_length_mismatch(self, rate_two_four, feedback_encoder):
        """Test that encoders of different lengths are refused."""
        with pytest.raises(ShapeError):
            monomial_equivalent_direct(rate_two_four, feedback_encoder)

    def test_search_cap(self, block_pair):
        """Test that the search cap is checked before searching."""
        with pytest.raises(SearchCapExceeded) as excinfo:
            monomial_equivalent_direct(*block_pair, max_search=100)

        assert excinfo.value.size == 720

    def test_search_cap_from_environment(self, monkeypatch, block_pair):
        """Test that CONVEQUIV_MAX_SEARCH is honored."""
        monkeypatch.setenv("CONVEQUIV_MAX_SEARCH", "719")
        with pytest.raises(SearchCapExceeded):
            monomial_equivalent_direct(*block_pair)

    def test_zero_index_pair(self, zero_index_pair):
        """Test that the direct method separates codes with identical matrices."""
        assert monomial_equivalent_direct(*zero_index_pair).verdict is False


# ============================================================================
# WAM method
# ============================================================================


class TestWamMethod:
    """Tests for monomial_equivalent_wam."""

    def test_planted(self, gf2, feedback_encoder):
        """Test that a transformed encoder has a relabeled matrix."""
        t = MonomialTransform(Automorphism(gf2, 0), (1, 2, 0), (1, 1, 1))
        other = t.apply(feedback_encoder)

        report = monomial_equivalent_wam(feedback_encoder, other)

        assert report.verdict
        assert report.method == "wam"
        assert report.search_size == 6
        T, phi = report.witness
        assert relabel_wam(
            compute_wam(controller_form(feedback_encoder)), T, phi
        ) == compute_wam(controller_form(other))
        assert 1 <= report.tried <= report.search_size

    def test_tried_counts_relabelings(self, gf2, feedback_encoder):
        """Test that the report counts the state relabelings examined."""
        same = monomial_equivalent_wam(feedback_encoder, feedback_encoder)
        assert same.verdict
        assert same.tried == 1

        t = MonomialTransform(Automorphism(gf2, 0), (0, 2, 1), (1, 1, 1))
        other = monomial_equivalent_wam(feedback_encoder, t.apply(feedback_encoder))
        assert other.verdict
        assert 1 <= other.tried <= other.search_size

    def test_zero_forney_index_refused(self, zero_index_pair):
        """Test that an encoder with a zero Forney index is refused."""
        with pytest.raises(ZeroForneyIndexError):
            monomial_equivalent_wam(*zero_index_pair)

    def test_zero_index_refused_for_either_encoder(self, gf2, feedback_encoder):
        """Test that the refusal applies when only the second encoder has a zero index."""
        other = PolyMatrix.parse(gf2, "1; z; 0\n0; 0; 1")
        with pytest.raises(ZeroForneyIndexError):
            monomial_equivalent_wam(feedback_encoder, other)

    def test_not_reduced(self, ternary_encoder):
        """Test that a non-reduced encoder is refused."""
        with pytest.raises(NotReducedError):
            monomial_equivalent_wam(ternary_encoder, ternary_encoder)

    def test_different_dimensions(self, gf2, feedback_encoder):
        """Test that codes of different dimension are inequivalent."""
        report = monomial_equivalent_wam(feedback_encoder, PolyMatrix.parse(gf2, "1; z; 1+z"))
        assert report.verdict is False
        assert report.search_size == 0

    def test_methods_agree(self, gf2, feedback_encoder):
        """Test that both methods give the same verdict on two codes of equal parameters."""
        other = PolyMatrix.parse(gf2, "1; z; z\n0; 1; z")
        direct = monomial_equivalent_direct(feedback_encoder, other)
        by_wam = monomial_equivalent_wam(feedback_encoder, other)
        assert direct.verdict == by_wam.verdict

    def test_report_json(self, gf2, feedback_encoder):
        """Test the JSON form of a WAM report."""
        record = monomial_equivalent_wam(feedback_encoder, feedback_encoder).to_json()

        assert record["verdict"] is True
        assert record["witness"] == {"T": ["1; 0", "0; 1"], "automorphism": "id"}
        assert "elapsed" not in record

    def test_report_json_with_timings(self, feedback_encoder):
        """Test that timings are only included on request."""
        record = monomial_equivalent_direct(feedback_encoder, feedback_encoder).to_json(
            include_timings=True
        )
        assert isinstance(record["elapsed"], float)
        assert record["witness"]["automorphism"] == "id"

    def test_reports_compare_without_timing(self):
        """Test that elapsed time does not affect report equality."""
        assert EquivalenceReport(False, "wam", elapsed=1.0) == EquivalenceReport(
            False, "wam", elapsed=2.0
        )


@pytest.mark.slow
@pytest.mark.parametrize(
    ("q", "n", "indices"),
    [(2, 3, [1, 1]), (3, 3, [1, 1]), (4, 3, [1, 1]), (2, 4, [2, 1])],
)
def test_monomial_equivalence_is_an_equivalence_relation(q, n, indices, rng):
    """
    Test reflexivity, symmetry and transitivity of monomial equivalence on
    sampled triples G1, G2 = t(G1) and G3, where G3 is a transform of G2 on
    even trials and an independent encoder otherwise. Witnesses are inverted
    and composed along the way, and the method comparing weight adjacency
    matrices agrees with the direct one.
    """
    F = make_field(2, 2) if q == 4 else make_field(q)
    for trial in range(10):
        G1 = random_encoder(F, n, indices, rng)
        G2 = MonomialTransform.random(F, n, rng).apply(G1)
        if trial % 2 == 0:
            G3 = MonomialTransform.random(F, n, rng).apply(G2)
        else:
            G3 = random_encoder(F, n, indices, rng)
        triple = (G1, G2, G3)
        reports = {
            (i, j): monomial_equivalent_direct(triple[i], triple[j])
            for i in range(3)
            for j in range(3)
        }

        for i in range(3):
            assert reports[i, i].verdict
        for i in range(3):
            for j in range(3):
                assert reports[i, j].verdict == reports[j, i].verdict
                if reports[i, j].verdict:
                    inverse = reports[i, j].witness.inverse()
                    assert verify_monomial_witness(triple[j], triple[i], inverse)
                for m in range(3):
                    if reports[i, j].verdict and reports[j, m].verdict:
                        assert reports[i, m].verdict
                        composed = reports[i, j].witness.compose(reports[j, m].witness)
                        assert verify_monomial_witness(triple[i], triple[m], composed)

        assert reports[0, 1].verdict
        if trial % 2 == 0:
            assert reports[0, 2].verdict
        assert monomial_equivalent_wam(G1, G3).verdict == reports[0, 2].verdict


# ============================================================================
# Feedback equivalence
# ============================================================================


class TestFeedbackEquivalence:
    """Tests for feedback_equivalent."""

    @pytest.fixture
    def feedback_image(self, gf2, feedback_encoder):
        step = FeedbackWitness(
            gf2.array([[1, 0], [0, 1]]), gf2.array([[1, 0], [0, 1]]), gf2.array([[0, 0], [1, 0]])
        )
        return apply_feedback(controller_form(feedback_encoder), step)

    def test_orbit_of_controller_form(self, feedback_encoder, feedback_image):
        """Test that a feedback image of the controller form is recognized."""
        sigma = controller_form(feedback_encoder)

        verdict, witness = feedback_equivalent(sigma, feedback_image, semi_reduced=True)

        assert verdict
        assert apply_feedback(sigma, witness) == feedback_image

    def test_non_reduced_image_needs_flag(self, feedback_encoder, feedback_image):
        """Test that the non-reduced image encoder is refused by default."""
        assert not is_reduced(reconstruct_encoder(feedback_image))
        with pytest.raises(NotReducedError, match="semi_reduced=True"):
            feedback_equivalent(controller_form(feedback_encoder), feedback_image)

    def test_ternary_semi_reduced(self, ternary_system):
        """Test a canonical realization of a semi-reduced, non-reduced encoder."""
        verdict, witness = feedback_equivalent(ternary_system, ternary_system, semi_reduced=True)
        assert verdict
        assert apply_feedback(ternary_system, witness) == ternary_system

    def test_different_codes(self, gf2, feedback_encoder):
        """Test that realizations of different codes are inequivalent."""
        other = controller_form(PolyMatrix.parse(gf2, "1; z; z\n0; 1; z"))
        assert feedback_equivalent(controller_form(feedback_encoder), other) == (False, None)

    def test_different_degrees(self, gf2, feedback_encoder):
        """Test that encoders of different degrees are refused."""
        other = controller_form(PolyMatrix.parse(gf2, "1; z; 0\n0; 0; 1"))
        with pytest.raises(PreconditionError, match="different degrees"):
            feedback_equivalent(controller_form(feedback_encoder), other)

    def test_not_canonical(self, ternary_encoder, ternary_system):
        """Test that a non-minimal realization is refused."""
        with pytest.raises(NotCanonicalError):
            feedback_equivalent(controller_form(ternary_encoder), ternary_system)

    def test_condition_fails(self, non_basic_system):
        """Test that a system failing the rank condition is refused."""
        with pytest.raises(PreconditionError, match="rank condition"):
            feedback_equivalent(non_basic_system, non_basic_system)

    def test_size_mismatch(self, rate_two_four, feedback_encoder):
        """Test that systems with different k or n are refused."""
        with pytest.raises(ShapeError):
            feedback_equivalent(controller_form(rate_two_four), controller_form(feedback_encoder))


def _random_invertible(F, delta, rng):
    matrices = list(enumerate_invertible(F, delta))
    return matrices[int(rng.integers(len(matrices)))]


FEEDBACK_GRID = [(2, 4, [2, 1]), (2, 3, [1, 1]), (3, 3, [1, 1]), (2, 3, [2, 1]), (4, 3, [1, 1])]


@pytest.mark.slow
@pytest.mark.parametrize(("q", "n", "indices"), FEEDBACK_GRID)
def test_feedback_equivalence_planted(q, n, indices, rng):
    """
    Test that canonical realizations of two reduced encoders of one code are
    feedback equivalent, with a witness that maps one onto the other.
    Together with the other grid points this covers 200 planted pairs.
    """
    F = make_field(2, 2) if q == 4 else make_field(q)
    for _ in range(40):
        G = random_encoder(F, n, indices, rng)
        sigma = controller_form(G)
        W = random_unimodular(F, len(indices), rng, degree_profile=row_degrees(G))
        S = _random_invertible(F, sigma.delta, rng)
        other = apply_similarity(controller_form(W @ G), S)

        verdict, witness = feedback_equivalent(sigma, other)

        assert verdict
        assert isinstance(witness, FeedbackWitness)
        assert apply_feedback(sigma, witness) == other


@pytest.mark.slow
@pytest.mark.parametrize(("q", "n", "indices"), FEEDBACK_GRID)
def test_feedback_equivalence_unequal_codes(q, n, indices, rng):
    """
    Test that realizations of encoders with the same row degrees but
    different codes are never feedback equivalent. Together with the other
    grid points this covers 200 such pairs.
    """
    F = make_field(2, 2) if q == 4 else make_field(q)
    unequal = 0
    for _ in range(400):
        G = random_encoder(F, n, indices, rng)
        G2 = random_encoder(F, n, indices, rng)
        if code_equal(G, G2):
            continue
        assert feedback_equivalent(controller_form(G), controller_form(G2)) == (False, None)
        unequal += 1
        if unequal == 40:
            break
    assert unequal == 40


# ============================================================================
# Random generation
# ============================================================================


class TestRandomGeneration:
    """Tests for the random encoder and matrix generators."""

    def test_random_encoder(self, gf3, rng):
        """Test that sampled encoders are basic and reduced with the requested degrees."""
        G = random_encoder(gf3, 4, [2, 1], rng)
        assert row_degrees(G) == [2, 1]
        assert is_basic(G)
        assert is_reduced(G)

    def test_random_encoder_shape(self, gf2, rng):
        """Test that more rows than columns is refused."""
        with pytest.raises(ShapeError):
            random_encoder(gf2, 1, [1, 1], rng)

    def test_random_unimodular(self, gf3, rng):
        """Test that sampled transition matrices are unimodular."""
        for _ in range(5):
            assert is_unimodular(random_unimodular(gf3, 3, rng, max_degree=2))

    def test_degree_profile_keeps_row_degrees(self, gf2, rng):
        """Test that a profiled transition keeps a reduced encoder reduced."""
        G = random_encoder(gf2, 4, [2, 1], rng)
        for _ in range(5):
            image = random_unimodular(gf2, 2, rng, degree_profile=[2, 1]) @ G
            assert row_degrees(image) == [2, 1]
            assert code_equal(image, G)

    def test_random_poly_matrix(self, gf2, rng):
        """Test the shape and degree bound of a random matrix."""
        M = random_poly_matrix(gf2, 2, 3, 2, rng)
        assert M.shape == (2, 3)
        assert M.max_degree <= 2


@pytest.mark.slow
def test_structural_properties_of_random_matrices(rng):
    """
    Test structural identities on random full-rank matrices: McMillan degree
    bounds the degree (with equality for reduced matrices), the controller
    form round-trips, WAM rows have mass q^k, and Popov forms are idempotent
    and invariant under unimodular transitions.
    """
    checked = 0
    for draw in range(500):
        F = make_field(2 if draw % 2 == 0 else 3)
        k = 1 + int(rng.integers(2))
        n = k + int(rng.integers(5 - k))
        G = random_poly_matrix(F, k, n, int(rng.integers(4)), rng)
        if not is_full_row_rank(G):
            continue
        checked += 1

        d, d_m = degree(G), mcmillan_degree(G)
        assert d_m >= d
        if is_reduced(G):
            assert d_m == d

        sigma = controller_form(G)
        assert reconstruct_encoder(sigma) == G
        wam = compute_wam(sigma)
        assert all(wam.row_mass(x) == F.q**k for x in range(wam.num_states))

        P = popov_form(G)
        assert popov_form(P) == P
        assert popov_form(random_unimodular(F, k, rng) @ G) == P
    assert checked > 300


# ============================================================================
# Cross-validation
# ============================================================================


class TestCrossValidation:
    """Tests for cross_validate_main_theorem."""

    def test_small_run(self):
        """Test that both methods agree on a handful of binary pairs."""
        report = cross_validate_main_theorem(
            {"p": 2, "s": 1, "n": 4, "indices": [1, 1], "count": 6, "seed": 7}
        )

        assert isinstance(report, CrossValidationReport)
        assert report.ok
        assert len(report.frame) == 6
        assert report.frame["planted"].tolist() == [True, False] * 3
        assert report.frame["direct"][report.frame["planted"]].all()
        assert report.elapsed is not None

    def test_deterministic(self):
        """Test that equal seeds give equal frames."""
        spec = {"p": 2, "s": 1, "n": 3, "indices": [1], "count": 4, "seed": 3}
        first = cross_validate_main_theorem(spec).frame
        second = cross_validate_main_theorem(spec).frame
        assert first.equals(second)

    def test_zero_index_refused(self):
        """Test that a zero Forney index is refused up front."""
        with pytest.raises(ZeroForneyIndexError):
            cross_validate_main_theorem(
                {"p": 2, "s": 1, "n": 4, "indices": [1, 0], "count": 2}
            )

    @pytest.mark.slow
    def test_hundred_binary_pairs(self):
        """Test agreement on one hundred binary pairs with indices (1, 1)."""
        report = cross_validate_main_theorem(
            {"p": 2, "s": 1, "n": 4, "indices": [1, 1], "count": 100, "seed": 2026}
        )
        assert report.disagreements == 0
        assert report.planted_failures == 0

    @pytest.mark.slow
    def test_extension_field_pairs(self):
        """Test agreement over GF(4), where automorphisms take part."""
        report = cross_validate_main_theorem(
            {"p": 2, "s": 2, "n": 3, "indices": [1, 1], "count": 6, "seed": 11}
        )
        assert report.ok
