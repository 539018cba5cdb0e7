"""Tests for witness search, witness checking and norm synthesis."""

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from deltaset.constructions import (
    WynerParams,
    cube_family,
    cube_witness,
    octahedron_instance,
    octahedron_witness,
    wyner_lift,
)
from deltaset.duality import (
    Instance,
    Witness,
    WitnessFound,
    WitnessInfeasible,
    build_norm,
    dual_values,
    find_witness,
    forced_dual_values,
    hull_generators,
    kernel_equal_coefficients,
    octahedron_frame,
    thickening_basis,
    verify_witness,
    witness_program,
)
from deltaset.errors import (
    DeltaRangeError,
    DuplicateInputError,
    InstanceError,
    InvalidWitnessError,
)
from deltaset.exact import add, rank, scale, unit_vector
from deltaset.lp import check_certificate
from deltaset.norms import L1Norm, LInfNorm, verify_additive_set

F = Fraction
TWO_THIRDS = F(2, 3)


def _cube_instance(d: int) -> Instance:
    _, xs = cube_family(d)
    return Instance(delta=TWO_THIRDS, xs=tuple(xs))


def _octahedron() -> Instance:
    _, xs = octahedron_instance()
    return Instance(delta=TWO_THIRDS, xs=tuple(xs))


def _random_linf_triple(rng: random.Random) -> Instance:
    """Three distinct l_inf-normalized vectors of dimension 3."""
    norm = LInfNorm(3)
    xs = []
    while len(xs) < 3:
        raw = tuple(F(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(3))
        size = norm.gauge(raw)
        if size == 0:
            continue
        x = scale(1 / size, raw)
        if x not in xs:
            xs.append(x)
    return Instance(delta=F(3, 5), xs=tuple(xs))


@st.composite
def linf_families(draw: st.DrawFn, m: int) -> Instance:
    """m distinct l_inf unit vectors in dimension m at delta = 2/3.

    Half of the draws pin the last coordinate to 0, so the family spans at
    most m - 1 dimensions.
    """
    flat = draw(st.booleans())
    coordinate = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    norm = LInfNorm(m)
    xs = []
    for _ in range(m):
        raw = draw(st.lists(coordinate, min_size=m, max_size=m))
        if flat:
            raw[-1] = F(0)
        size = norm.gauge(tuple(raw))
        assume(size != 0)
        xs.append(scale(1 / size, tuple(raw)))
    assume(len(set(xs)) == m)
    return Instance(delta=TWO_THIRDS, xs=tuple(xs))


class TestInstance:
    """Test Instance validation."""

    def test_empty(self) -> None:
        """Test that an instance needs a vector."""
        with pytest.raises(InstanceError, match="at least one"):
            Instance(delta=F(1), xs=())

    def test_zero_vector(self) -> None:
        """Test that zero vectors are refused."""
        with pytest.raises(InstanceError, match="zero"):
            Instance(delta=F(1), xs=((F(0), F(0)),))

    def test_mixed_dimensions(self) -> None:
        """Test that vectors must share a dimension."""
        with pytest.raises(InstanceError):
            Instance(delta=F(1), xs=((F(1),), (F(1), F(0))))

    def test_duplicates(self) -> None:
        """Test that repeated vectors are refused."""
        e1 = unit_vector(2, 0)
        with pytest.raises(DuplicateInputError):
            Instance(delta=F(1), xs=(e1, e1))

    def test_delta_range(self) -> None:
        """Test that delta = 2 is allowed but not beyond."""
        assert Instance(delta=F(2), xs=(unit_vector(1, 0),)).delta == 2
        with pytest.raises(DeltaRangeError):
            Instance(delta=F(0), xs=(unit_vector(1, 0),))

    def test_properties(self) -> None:
        """Test dimension and size."""
        instance = _cube_instance(3)
        assert instance.dimension == 3
        assert instance.size == 3


class TestWitnessProgram:
    """Test the per-index dual system."""

    def test_row_count(self) -> None:
        """Test one equality, two bounds per other vector and one row per pair."""
        program = witness_program(_cube_instance(4), 0)
        assert len(program.constraints) == 1 + 2 * 3 + 6
        assert program.num_vars == 4


class TestFindWitness:
    """Test deciding the dual system."""

    def test_cube_family(self) -> None:
        """Test that the three-dimensional cube family has a witness."""
        instance = _cube_instance(3)
        result = find_witness(instance)
        assert isinstance(result, WitnessFound)
        assert verify_witness(instance, result.witness)

    def test_single_vector(self) -> None:
        """Test that m = 1 is always feasible."""
        instance = Instance(delta=F(1), xs=(unit_vector(2, 0),))
        result = find_witness(instance)
        assert isinstance(result, WitnessFound)
        assert dual_values(instance, result.witness) == [[F(1)]]

    def test_scaled_pair_is_infeasible(self) -> None:
        """Test that x and 2x cannot both be unit vectors."""
        instance = Instance(delta=F(1), xs=((F(1),), (F(2),)))
        result = find_witness(instance)
        assert isinstance(result, WitnessInfeasible)
        assert result.index == 0
        assert check_certificate(result.program, result.certificate)

    def test_random_triples_below_threshold(self) -> None:
        """Test that 100 random unit triples are infeasible at delta = 3/5."""
        rng = random.Random(2024)
        for _ in range(100):
            instance = _random_linf_triple(rng)
            result = find_witness(instance)
            assert isinstance(result, WitnessInfeasible)
            assert check_certificate(result.program, result.certificate)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([3, 5]).flatmap(linf_families))
    def test_feasible_families_are_independent(self, instance: Instance) -> None:
        """Test that a witness at delta = 2/3 for m = 3 or 5 vectors forces rank m."""
        result = find_witness(instance)
        if isinstance(result, WitnessFound):
            assert rank(instance.xs) == instance.size
        else:
            assert check_certificate(result.program, result.certificate)

    @pytest.mark.parametrize("m", [3, 5])
    def test_flat_families_are_infeasible(self, m: int) -> None:
        """Test that m unit vectors in an (m - 1)-dimensional slice have no witness."""
        _, cube = cube_family(m - 1)
        xs = [x + (F(0),) for x in cube] + [tuple(-a for a in cube[0]) + (F(0),)]
        instance = Instance(delta=TWO_THIRDS, xs=tuple(xs))
        assert rank(instance.xs) < m
        assert isinstance(find_witness(instance), WitnessInfeasible)

    def test_dantzig_rule(self) -> None:
        """Test that the Dantzig rule finds a valid witness too."""
        instance = _octahedron()
        result = find_witness(instance, pivot_rule="dantzig")
        assert isinstance(result, WitnessFound)
        assert verify_witness(instance, result.witness)


class TestVerifyWitness:
    """Test exact witness checking."""

    def test_cube_witness(self) -> None:
        """Test y_i = e_i for the cube family."""
        assert verify_witness(_cube_instance(4), cube_witness(4))

    def test_octahedron_witness(self) -> None:
        """Test y_i = 3 x_i for the octahedron set."""
        assert verify_witness(_octahedron(), octahedron_witness())

    def test_perturbed_witness(self) -> None:
        """Test that moving y_1 by e_1/100 breaks <x_1, y_1> = 1."""
        ys = list(cube_witness(4).ys)
        ys[0] = add(ys[0], scale(F(1, 100), unit_vector(4, 0)))
        assert not verify_witness(_cube_instance(4), Witness(tuple(ys)))

    def test_wrong_length(self) -> None:
        """Test that a witness of the wrong length is rejected."""
        assert not verify_witness(_cube_instance(4), cube_witness(3))


class TestBuildNorm:
    """Test synthesis of the realizing polytope norm."""

    def test_single_vector_is_thickened(self) -> None:
        """Test that {e1} in dimension 2 thickens to the cross-polytope."""
        instance = Instance(delta=F(1), xs=(unit_vector(2, 0),))
        norm = build_norm(instance, Witness((unit_vector(2, 0),)))
        assert norm.generators == (unit_vector(2, 0), unit_vector(2, 1))
        assert norm.gauge((F(1), F(1))) == 2

    def test_cube_family_hull_is_flat(self) -> None:
        """Test that the four-dimensional cube hull is thickened by (1, 1, 1, 1)."""
        instance = _cube_instance(4)
        assert thickening_basis(hull_generators(instance), 4) == [(F(1),) * 4]

    def test_cube_family_round_trip(self) -> None:
        """Test gauge(x_i) = 1 and all pairs at most 2/3 for the built norm."""
        instance = _cube_instance(4)
        norm = build_norm(instance, cube_witness(4))
        report = verify_additive_set(norm, instance.xs, TWO_THIRDS)
        assert report.passed
        assert len(report.tight_pairs) == 6

    def test_octahedron_recovers_l1(self) -> None:
        """Test that the octahedron norm equals l_1 on 100 random points."""
        instance = _octahedron()
        norm = build_norm(instance, octahedron_witness())
        l1 = L1Norm(3)
        rng = random.Random(7)
        for _ in range(100):
            x = tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
            assert norm.gauge(x) == l1.gauge(x)

    def test_invalid_witness(self) -> None:
        """Test that a failing witness raises."""
        with pytest.raises(InvalidWitnessError):
            build_norm(_cube_instance(4), Witness(tuple(unit_vector(4, 0) for _ in range(4))))

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
    def test_found_witness_round_trip(self, d: int) -> None:
        """Test find_witness then build_norm then verification for cube families."""
        instance = _cube_instance(d)
        result = find_witness(instance)
        assert isinstance(result, WitnessFound)
        norm = build_norm(instance, result.witness)
        assert all(norm.gauge(x) == 1 for x in instance.xs)
        assert verify_additive_set(norm, instance.xs, TWO_THIRDS).passed
        if d >= 3:
            assert forced_dual_values(instance, result.witness)

    @pytest.mark.parametrize("seed", range(10))
    def test_lifted_code_round_trip(self, seed: int) -> None:
        """Test the same pipeline on seeded lifted codes at delta = 1."""
        lift = wyner_lift(WynerParams(d=3, delta=F(1), target_m=3, seed=seed))
        instance = lift.instance
        result = find_witness(instance)
        assert isinstance(result, WitnessFound)
        norm = build_norm(instance, result.witness)
        assert verify_additive_set(norm, instance.xs, F(1)).passed


class TestForcedStructure:
    """Test the forced -1/3 dual values at delta = 2/3."""

    def test_cube_family(self) -> None:
        """Test that the cube witness has every off-diagonal value -1/3."""
        assert forced_dual_values(_cube_instance(4), cube_witness(4)) is True

    def test_octahedron(self) -> None:
        """Test the same for the octahedron witness."""
        assert forced_dual_values(_octahedron(), octahedron_witness()) is True

    def test_found_octahedron_witness(self) -> None:
        """Test that a solver-found octahedron witness is forced too."""
        instance = _octahedron()
        result = find_witness(instance)
        assert isinstance(result, WitnessFound)
        assert forced_dual_values(instance, result.witness) is True

    def test_two_vectors_not_applicable(self) -> None:
        """Test that m = 2 returns None."""
        instance = _cube_instance(2)
        assert forced_dual_values(instance, cube_witness(2)) is None

    def test_other_delta_not_applicable(self) -> None:
        """Test that delta != 2/3 returns None."""
        _, xs = cube_family(3)
        instance = Instance(delta=F(1), xs=tuple(xs))
        assert forced_dual_values(instance, cube_witness(3)) is None


class TestKernelStructure:
    """Test dependence structure helpers."""

    def test_octahedron_kernel(self) -> None:
        """Test that the octahedron dependence has equal coefficients."""
        _, xs = octahedron_instance()
        assert kernel_equal_coefficients(xs)

    def test_independent(self) -> None:
        """Test that an independent set holds vacuously."""
        assert kernel_equal_coefficients([unit_vector(3, i) for i in range(3)])

    def test_unequal_dependence(self) -> None:
        """Test that {e1, -e1, e2} fails."""
        e1 = unit_vector(2, 0)
        assert not kernel_equal_coefficients([e1, scale(F(-1), e1), unit_vector(2, 1)])

    def test_octahedron_frame(self) -> None:
        """Test that z_i = (3/2)(x_i + x_4) recovers the standard basis."""
        assert octahedron_frame(_octahedron()) == [unit_vector(3, i) for i in range(3)]

    def test_frame_needs_four_vectors(self) -> None:
        """Test that the frame refuses other instances."""
        with pytest.raises(InstanceError, match="four vectors"):
            octahedron_frame(_cube_instance(3))

    def test_frame_needs_zero_sum(self) -> None:
        """Test that four vectors not summing to zero are refused."""
        _, xs = cube_family(5)
        with pytest.raises(InstanceError, match="sum to zero"):
            octahedron_frame(Instance(delta=TWO_THIRDS, xs=tuple(xs[:4])))
