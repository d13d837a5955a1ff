#include "abelsim/homomorphism.hpp"

#include "test_utils.hpp"

#include <gtest/gtest.h>

namespace abelsim {
namespace {

using testing::rand_int;
using testing::random_element;
using testing::random_mixed_group;
using testing::random_rep;
using testing::Rng;

GroupSpec gz(std::initializer_list<PrimitiveFactor> f) { return GroupSpec(std::vector(f)); }

MatrixRep rep1(const GroupSpec &dom, const GroupSpec &cod, Rat entry) {
    return MatrixRep(dom, cod, RatMat(1, 1, {std::move(entry)}));
}

TEST(MatrixRepValidate, AcceptsTextbookCases) {
    GroupSpec z = gz({PrimitiveFactor::z()});
    GroupSpec t = gz({PrimitiveFactor::t()});
    GroupSpec z4 = gz({PrimitiveFactor::zn(4)});
    GroupSpec z2 = gz({PrimitiveFactor::zn(2)});

    EXPECT_NO_THROW(validate(rep1(z, z, Rat(-7))));
    EXPECT_NO_THROW(validate(rep1(z, t, Rat(5, 7))));
    EXPECT_NO_THROW(validate(rep1(t, t, Rat(3))));
    EXPECT_NO_THROW(validate(rep1(z4, t, Rat(3, 4))));
    EXPECT_NO_THROW(validate(rep1(z2, z4, Rat(2))));
    EXPECT_NO_THROW(validate(rep1(z4, z2, Rat(1))));
    EXPECT_NO_THROW(validate(rep1(t, z, Rat(0))));

    GroupSpec z2z2 = gz({PrimitiveFactor::z(), PrimitiveFactor::z()});
    MatrixRep sum(z2z2, z2z2, RatMat(2, 2, {Rat(1), Rat(0), Rat(1), Rat(1)}));
    EXPECT_NO_THROW(validate(sum));
}

TEST(MatrixRepValidate, RejectsWithNamedConditions) {
    GroupSpec z = gz({PrimitiveFactor::z()});
    GroupSpec t = gz({PrimitiveFactor::t()});
    GroupSpec r = gz({PrimitiveFactor::r()});
    GroupSpec z4 = gz({PrimitiveFactor::zn(4)});
    GroupSpec z2 = gz({PrimitiveFactor::zn(2)});

    try {
        validate(rep1(z4, z4, Rat(1, 2)));
        FAIL() << "expected RepError";
    } catch (const RepError &e) {
        EXPECT_EQ(e.error_kind, RepErrorKind::NonIntegerRow);
    }

    try {
        validate(rep1(z2, z4, Rat(1)));  // only multiples of 2 embed Z_2 in Z_4
        FAIL() << "expected RepError";
    } catch (const RepError &e) {
        EXPECT_EQ(e.error_kind, RepErrorKind::ConsistencyPrimal);
    }

    try {
        validate(rep1(z4, t, Rat(1, 3)));
        FAIL() << "expected RepError";
    } catch (const RepError &e) {
        EXPECT_EQ(e.error_kind, RepErrorKind::ConsistencyPrimal);
    }

    try {
        validate(rep1(t, z, Rat(2)));
        FAIL() << "expected RepError";
    } catch (const RepError &e) {
        EXPECT_EQ(e.error_kind, RepErrorKind::ForbiddenBlock);
    }

    try {
        validate(rep1(r, z, Rat(1)));
        FAIL() << "expected RepError";
    } catch (const RepError &e) {
        EXPECT_EQ(e.error_kind, RepErrorKind::ForbiddenBlock);
    }

    try {
        validate(rep1(t, t, Rat(1, 2)));
        FAIL() << "expected RepError";
    } catch (const RepError &e) {
        EXPECT_EQ(e.error_kind, RepErrorKind::ConsistencyPrimal);
    }
}

TEST(MatrixRepValidate, FuzzRejectsPerturbations) {
    Rng rng(5150);
    int rejected = 0;
    for (int rep = 0; rep < 300; rep++) {
        GroupSpec g = random_mixed_group(rng, 3);
        GroupSpec h = random_mixed_group(rng, 3);
        MatrixRep a = random_rep(rng, g, h);
        ASSERT_TRUE(is_valid(a));
        size_t i = static_cast<size_t>(rand_int(rng, 0, static_cast<int64_t>(h.size()) - 1));
        size_t j = static_cast<size_t>(rand_int(rng, 0, static_cast<int64_t>(g.size()) - 1));
        // A shift that is not in any factor's allowed entry lattice unless
        // the target row is a T row fed from Z.
        a.mat.at(i, j) += Rat(1, 9973);
        bool still_valid = is_valid(a);
        bool t_row_from_unconstrained = h.factors[i].kind == FactorKind::T &&
                                        (g.factors[j].kind == FactorKind::Z ||
                                         g.factors[j].kind == FactorKind::R);
        bool r_row = h.factors[i].kind == FactorKind::R &&
                     (g.factors[j].kind == FactorKind::Z || g.factors[j].kind == FactorKind::R);
        ASSERT_EQ(still_valid, t_row_from_unconstrained || r_row);
        if (!still_valid) {
            rejected++;
        }
    }
    EXPECT_GT(rejected, 100);
}

TEST(MatrixRepApply, CanonicalizesImages) {
    GroupSpec z4z4 = gz({PrimitiveFactor::zn(4), PrimitiveFactor::zn(4)});
    MatrixRep sum(z4z4, z4z4, RatMat(2, 2, {Rat(1), Rat(0), Rat(2), Rat(1)}));
    validate(sum);
    EXPECT_EQ(sum.apply({Rat(3), Rat(2)}), RatVec({Rat(3), Rat(0)}));

    GroupSpec z4 = gz({PrimitiveFactor::zn(4)});
    GroupSpec t = gz({PrimitiveFactor::t()});
    MatrixRep emb = rep1(z4, t, Rat(1, 4));
    EXPECT_EQ(emb.apply({Rat(3)}), RatVec({Rat(3, 4)}));
    EXPECT_EQ(emb.apply({Rat(5)}), RatVec({Rat(1, 4)}));  // same group element as 1
}

TEST(MatrixRepApply, HomomorphismPropertyFuzz) {
    Rng rng(5151);
    for (int rep = 0; rep < 300; rep++) {
        GroupSpec g = random_mixed_group(rng, 4);
        GroupSpec h = random_mixed_group(rng, 4);
        MatrixRep a = random_rep(rng, g, h);
        RatVec x = random_element(rng, g);
        RatVec y = random_element(rng, g);
        RatVec lhs = a.apply(canonicalize(g, add(x, y)));
        RatVec rhs = canonicalize(h, add(a.apply(x), a.apply(y)));
        ASSERT_EQ(lhs, rhs);
        // Representative independence.
        RatVec xs = x;
        for (size_t i = 0; i < g.size(); i++) {
            Rat c = g.factors[i].characteristic();
            xs[i] += c * rand_int(rng, -2, 2);
        }
        ASSERT_EQ(canonicalize(h, a.mat * xs), a.apply(x));
    }
}

TEST(MatrixRepDual, MatchesPairingAndContravariance) {
    Rng rng(5152);
    for (int rep = 0; rep < 200; rep++) {
        GroupSpec g = random_mixed_group(rng, 3);
        GroupSpec h = random_mixed_group(rng, 3);
        MatrixRep a = random_rep(rng, g, h);
        MatrixRep astar = dual(a);
        ASSERT_TRUE(is_valid(astar));
        // chi_mu(alpha(g)) = chi_{alpha*(mu)}(g).
        RatVec x = random_element(rng, g);
        RatVec mu = random_element(rng, dual_group(h));
        ASSERT_EQ(character(h, mu, a.apply(x)), character(g, astar.apply(mu), x));
        // Double dual gives the original matrix back.
        MatrixRep dd = dual(astar);
        ASSERT_EQ(dd.mat, a.mat);
        ASSERT_EQ(dd.domain, a.domain);
        ASSERT_EQ(dd.codomain, a.codomain);
    }
}

TEST(MatrixRepCompose, MatchesPointwiseComposition) {
    Rng rng(5153);
    for (int rep = 0; rep < 200; rep++) {
        GroupSpec g = random_mixed_group(rng, 3);
        GroupSpec h = random_mixed_group(rng, 3);
        GroupSpec k = random_mixed_group(rng, 3);
        MatrixRep a = random_rep(rng, g, h);
        MatrixRep b = random_rep(rng, h, k);
        MatrixRep ba = compose(b, a);
        ASSERT_TRUE(is_valid(ba));
        RatVec x = random_element(rng, g);
        ASSERT_EQ(ba.apply(x), b.apply(a.apply(x)));
        // Contravariance of duals.
        MatrixRep lhs = dual(ba);
        MatrixRep rhs = compose(dual(a), dual(b));
        ASSERT_EQ(lhs.mat, rhs.mat);
    }
}

TEST(MatrixRepCompose, RejectsMismatchedGroups) {
    GroupSpec z = gz({PrimitiveFactor::z()});
    GroupSpec z4 = gz({PrimitiveFactor::zn(4)});
    MatrixRep a = MatrixRep::identity(z);
    MatrixRep b = MatrixRep::identity(z4);
    EXPECT_THROW(compose(b, a), std::invalid_argument);
}

}  // namespace
}  // namespace abelsim
