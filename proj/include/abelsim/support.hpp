#pragma once

// Support of a stabilizer state: the set of basis labels carrying nonzero
// amplitude. It is always a coset x0 + H of a subgroup H of G. The offset
// comes from the diagonal stabilizer elements (those with trivial X part),
// whose phases must all equal 1 on the support; H is generated by the X
// parts of the stabilizer group.

#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/linsolve.hpp"
#include "abelsim/quadratic.hpp"
#include "abelsim/stabilizer.hpp"

#include <stdexcept>
#include <utility>

namespace abelsim {

// Raised when a stabilizer description violates a structural promise, e.g.
// the phases of its diagonal elements do not form a character.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

struct SupportDesc {
    GroupSpec group;  // G
    RatVec x0;        // canonical offset
    MatrixRep e_h;    // parameter map R^a x Z^b -> G with image H
};

struct DiagonalPart {
    MatrixRep e_d;  // K -> G*: labels of the diagonal stabilizer elements
    RatVec rho;     // character label: on the support, dual(e_d)(x) = -rho
};

// Splits Lambda into its Z-label and X-shift halves.
inline MatrixRep lambda_z_part(const StabilizerDesc &desc) {
    size_t m = desc.group.size();
    return MatrixRep(desc.param, dual_group(desc.group), desc.lambda.mat.block(0, 0, m, desc.param.size()));
}

inline MatrixRep lambda_x_part(const StabilizerDesc &desc) {
    size_t m = desc.group.size();
    return MatrixRep(desc.param, desc.group, desc.lambda.mat.block(m, 0, m, desc.param.size()));
}

inline DiagonalPart diagonal_part(const StabilizerDesc &desc) {
    MatrixRep d = kernel(lambda_x_part(desc));
    const GroupSpec &k = d.domain;
    MatrixRep e_d = compose(lambda_z_part(desc), d);

    // Phase of the diagonal element with parameter kappa: the pullback of xi
    // through Lambda ∘ D. For a consistent stabilizer this must be a plain
    // character of K, which forces the quadratic part to vanish on R
    // directions and to be integral between Z directions.
    QuadraticFunc f = pullback(desc.xi, compose(desc.lambda, d));
    for (size_t i = 0; i < k.size(); i++) {
        for (size_t j = 0; j < k.size(); j++) {
            bool continuous = k.factors[i].kind == FactorKind::R ||
                              k.factors[j].kind == FactorKind::R;
            if (continuous) {
                if (f.m.at(i, j) != 0) {
                    throw InternalInconsistency(
                        "diagonal stabilizer phases have a quadratic part along R");
                }
            } else if (!is_integer(f.m.at(i, j))) {
                throw InternalInconsistency(
                    "diagonal stabilizer phases are not a character of the kernel");
            }
        }
    }
    RatVec rho(k.size());
    for (size_t i = 0; i < k.size(); i++) {
        rho[i] = f.v[i] + f.m.at(i, i) / 2;
    }
    return DiagonalPart{std::move(e_d), std::move(rho)};
}

namespace detail {

inline GroupSpec covering_group(const GroupSpec &g) {
    GroupSpec out = g;
    for (auto &f : out.factors) {
        if (f.kind == FactorKind::T) {
            f = PrimitiveFactor::r();
        } else if (f.kind == FactorKind::ZN) {
            f = PrimitiveFactor::z();
        }
    }
    return out;
}

}  // namespace detail

inline SupportDesc support(const StabilizerDesc &desc) {
    DiagonalPart diag = diagonal_part(desc);
    RatVec rhs(diag.rho.size());
    for (size_t i = 0; i < rhs.size(); i++) {
        rhs[i] = -diag.rho[i];
    }
    auto sol = solve_group_system(dual(diag.e_d), rhs);
    if (!sol) {
        throw InternalInconsistency("diagonal stabilizer conditions have no solution");
    }

    MatrixRep x_shifts = lambda_x_part(desc);
    MatrixRep e_h = normalize_solution_domain(
        MatrixRep(detail::covering_group(desc.param), desc.group, x_shifts.mat));
    return SupportDesc{desc.group, sol->x0, std::move(e_h)};
}

inline bool in_support(const SupportDesc &sd, const RatVec &x) {
    RatVec diff = canonicalize(sd.group, sub(canonicalize(sd.group, x), sd.x0));
    return solve_group_system(sd.e_h, diff).has_value();
}

}  // namespace abelsim
