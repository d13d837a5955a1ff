#include "abelsim/support.hpp"

#include "abelsim/circuit.hpp"
#include "abelsim/oracle.hpp"
#include "abelsim/stabilizer.hpp"
#include "test_utils.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

namespace abelsim {
namespace {

using testing::enumerate_group;
using testing::rand_int;
using testing::random_circuit;
using testing::random_element;
using testing::random_finite_group;
using testing::random_mixed_group;
using testing::Rng;

GroupSpec make_group(std::vector<PrimitiveFactor> f) { return GroupSpec(std::move(f)); }

TEST(Support, BasisStateSupportIsPoint) {
    GroupSpec g = make_group({PrimitiveFactor::zn(2), PrimitiveFactor::zn(4)});
    RatVec x = {Rat(1), Rat(3)};
    SupportDesc sd = support(initial_state(g, x));
    EXPECT_EQ(sd.x0, x);
    EXPECT_EQ(sd.e_h.domain.size(), 0u);
    for (const RatVec &y : enumerate_group(g)) {
        EXPECT_EQ(in_support(sd, y), y == x);
    }
}

TEST(Support, UniformStateAfterFourierCoversTheTorus) {
    GroupSpec g = make_group({PrimitiveFactor::z()});
    Circuit c{g, {Rat(0)}, {Gate::make_full_fourier(g)}};
    SupportDesc sd = support(simulate(c));
    ASSERT_EQ(sd.group, make_group({PrimitiveFactor::t()}));
    // The uniform superposition over T has full support: one real parameter.
    ASSERT_EQ(sd.e_h.domain.size(), 1u);
    EXPECT_EQ(sd.e_h.domain.factors[0].kind, FactorKind::R);
    EXPECT_TRUE(in_support(sd, {Rat(0)}));
    EXPECT_TRUE(in_support(sd, {Rat(1, 3)}));
    EXPECT_TRUE(in_support(sd, {Rat(7, 11)}));
}

TEST(Support, BellPairSupport) {
    GroupSpec g = make_group({PrimitiveFactor::zn(2), PrimitiveFactor::zn(2)});
    RatMat cnot(2, 2);
    cnot.at(0, 0) = 1;
    cnot.at(1, 0) = 1;
    cnot.at(1, 1) = 1;
    Circuit c{g,
              {Rat(0), Rat(0)},
              {Gate::make_fourier(g, {0}), Gate::make_automorphism(MatrixRep(g, g, cnot))}};
    SupportDesc sd = support(simulate(c));
    EXPECT_TRUE(in_support(sd, {Rat(0), Rat(0)}));
    EXPECT_TRUE(in_support(sd, {Rat(1), Rat(1)}));
    EXPECT_FALSE(in_support(sd, {Rat(0), Rat(1)}));
    EXPECT_FALSE(in_support(sd, {Rat(1), Rat(0)}));
}

// G = T with stabilizer generated by X(1/3) shifts and the diagonal
// elements Z(3k): the comb over the cyclic subgroup {0, 1/3, 2/3}.
TEST(Support, CombStateSupportAndItsFourierTransform) {
    GroupSpec g = make_group({PrimitiveFactor::t()});
    GroupSpec param = make_group({PrimitiveFactor::z(), PrimitiveFactor::zn(3)});
    GroupSpec gamma = pauli_label_group(g);
    RatMat lam(2, 2);
    lam.at(0, 0) = 3;
    lam.at(1, 1) = Rat(1, 3);
    StabilizerDesc desc{g, param, MatrixRep(param, gamma, lam), trivial_quadratic(gamma)};

    SupportDesc sd = support(desc);
    EXPECT_EQ(sd.x0, RatVec{Rat(0)});
    EXPECT_TRUE(in_support(sd, {Rat(0)}));
    EXPECT_TRUE(in_support(sd, {Rat(1, 3)}));
    EXPECT_TRUE(in_support(sd, {Rat(2, 3)}));
    EXPECT_FALSE(in_support(sd, {Rat(1, 2)}));
    EXPECT_FALSE(in_support(sd, {Rat(1, 6)}));

    // The Fourier transform of the comb is supported on the dual comb 3Z.
    StabilizerDesc after = apply_gate(desc, Gate::make_full_fourier(g));
    SupportDesc sf = support(after);
    ASSERT_EQ(sf.group, make_group({PrimitiveFactor::z()}));
    EXPECT_TRUE(in_support(sf, {Rat(0)}));
    EXPECT_TRUE(in_support(sf, {Rat(3)}));
    EXPECT_TRUE(in_support(sf, {Rat(-6)}));
    EXPECT_FALSE(in_support(sf, {Rat(1)}));
    EXPECT_FALSE(in_support(sf, {Rat(2)}));
    EXPECT_FALSE(in_support(sf, {Rat(4)}));
}

TEST(Support, FiniteFuzzMatchesDense) {
    Rng rng(20260814);
    for (int iter = 0; iter < 120; iter++) {
        GroupSpec g = random_finite_group(rng, 48, 3);
        RatVec input = random_element(rng, g);
        Circuit c = random_circuit(rng, g, input, rand_int(rng, 0, 5));
        StabilizerDesc desc = simulate(c);
        SupportDesc sd = support(desc);

        DenseState dense = dense_run(c);
        std::vector<RatVec> expected = dense_support(dense);
        std::set<RatVec> expected_set(expected.begin(), expected.end());
        ASSERT_FALSE(expected_set.empty());

        for (const RatVec &x : enumerate_group(desc.group)) {
            bool claimed = in_support(sd, x);
            bool actual = expected_set.count(x) > 0;
            ASSERT_EQ(claimed, actual)
                << "group " << desc.group.str() << " at " << iter << ", point "
                << RatMat(1, x.size(), x).str();
        }
        EXPECT_TRUE(in_support(sd, sd.x0));
    }
}

TEST(Support, DiagonalPhasesFormCharacterOnCircuitStates) {
    Rng rng(99);
    for (int iter = 0; iter < 60; iter++) {
        GroupSpec g = random_mixed_group(rng, 3);
        RatVec input = random_element(rng, g);
        Circuit c = random_circuit(rng, g, input, rand_int(rng, 0, 5));
        StabilizerDesc desc = simulate(c);
        DiagonalPart diag = diagonal_part(desc);
        // Every kernel parameter must give a diagonal stabilizer element whose
        // phase matches the character labelled by rho.
        const GroupSpec &k = diag.e_d.domain;
        MatrixRep d = kernel(lambda_x_part(desc));
        for (int t = 0; t < 10; t++) {
            RatVec kappa(k.size());
            for (size_t i = 0; i < k.size(); i++) {
                kappa[i] = Rat(rand_int(rng, -4, 4));
            }
            PauliOp sigma = stabilizer_element(desc, d.apply(kappa));
            EXPECT_TRUE(is_zero(sigma.g));
            EXPECT_EQ(sigma.mu, diag.e_d.apply(kappa));
            Phase expected = Phase::unit(2 * dot(diag.rho, kappa));
            EXPECT_EQ(sigma.gamma, expected);
        }
    }
}

TEST(Support, InternalInconsistencyOnCorruptDescription) {
    GroupSpec g = make_group({PrimitiveFactor::zn(2)});
    GroupSpec gamma = pauli_label_group(g);
    RatMat m(2, 2);
    m.at(0, 0) = Rat(1, 2);
    StabilizerDesc corrupt{g, gamma, MatrixRep::identity(gamma),
                           QuadraticFunc(gamma, m, RatVec(2, Rat(0)))};
    EXPECT_THROW(support(corrupt), InternalInconsistency);
}

TEST(Support, DeterministicAcrossCalls) {
    Rng rng(7);
    GroupSpec g = random_finite_group(rng, 32, 3);
    Circuit c = random_circuit(rng, g, random_element(rng, g), 4);
    StabilizerDesc desc = simulate(c);
    SupportDesc a = support(desc);
    SupportDesc b = support(desc);
    EXPECT_EQ(a.x0, b.x0);
    EXPECT_EQ(a.e_h.domain, b.e_h.domain);
    EXPECT_EQ(a.e_h.mat, b.e_h.mat);
}

}  // namespace
}  // namespace abelsim
