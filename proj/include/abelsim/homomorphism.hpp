#pragma once

// Matrix representations of continuous group homomorphisms.
//
// A rational matrix A represents a homomorphism alpha: G -> H when
// alpha(g) = A x (mod H) for every real lift x of g. Validity is decided by
// three families of conditions which are checked together:
//   - rows landing in a discrete factor (Z or Z_N) must be integral,
//   - c_j A(i,j) = 0 (mod d_i) for all entries, where c_j and d_i are the
//     characteristics of the domain and codomain factors ("mod 0" reads as
//     exact equality),
//   - the same conditions for the dual matrix A* = Y_G^-1 A^T Y_H.
// An equivalent block description (which entry shapes are allowed between
// each pair of factor kinds) is evaluated independently and cross-checked;
// disagreement would be a bug, not bad input.

#include "abelsim/group.hpp"
#include "abelsim/matrix.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abelsim {

struct MatrixRep {
    GroupSpec domain;
    GroupSpec codomain;
    RatMat mat;  // codomain.size() x domain.size()

    MatrixRep() = default;
    MatrixRep(GroupSpec dom, GroupSpec cod, RatMat m)
        : domain(std::move(dom)), codomain(std::move(cod)), mat(std::move(m)) {
        if (mat.rows() != codomain.size() || mat.cols() != domain.size()) {
            throw std::invalid_argument("MatrixRep: matrix shape does not match groups");
        }
    }

    static MatrixRep identity(const GroupSpec &g) {
        return MatrixRep(g, g, to_rational(IntMat::identity(g.size())));
    }

    // alpha(g) as canonical coordinates of the codomain. Any real lift of g
    // gives the same answer for a valid representation.
    RatVec apply(const RatVec &g) const {
        if (g.size() != domain.size()) {
            throw std::invalid_argument("apply: coordinate count mismatch");
        }
        return canonicalize(codomain, mat * g);
    }
};

enum class RepErrorKind {
    NonIntegerRow,
    ConsistencyPrimal,
    ConsistencyDual,
    ForbiddenBlock,
};

struct RepError : std::invalid_argument {
    RepErrorKind error_kind;
    size_t row;
    size_t col;

    RepError(RepErrorKind k, size_t i, size_t j, const std::string &what)
        : std::invalid_argument(what), error_kind(k), row(i), col(j) {}
};

namespace detail {

inline bool congruent_zero(const Rat &value, const Rat &modulus) {
    if (modulus == 0) {
        return value == 0;
    }
    return is_integer(value / modulus);
}

inline void throw_rep_error(RepErrorKind k, size_t i, size_t j) {
    std::string name;
    switch (k) {
        case RepErrorKind::NonIntegerRow:
            name = "NonIntegerRow";
            break;
        case RepErrorKind::ConsistencyPrimal:
            name = "ConsistencyViolation(primal)";
            break;
        case RepErrorKind::ConsistencyDual:
            name = "ConsistencyViolation(dual)";
            break;
        case RepErrorKind::ForbiddenBlock:
            name = "ForbiddenBlock";
            break;
    }
    throw RepError(k, i, j, "invalid matrix representation: " + name + " at entry (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
}

// True when no nontrivial homomorphism exists from dom to cod, i.e. the
// block is structurally zero.
inline bool forbidden_pair(const PrimitiveFactor &dom, const PrimitiveFactor &cod) {
    switch (dom.kind) {
        case FactorKind::Z:
            return false;
        case FactorKind::R:
            return cod.discrete();
        case FactorKind::ZN:
            return cod.kind == FactorKind::Z || cod.kind == FactorKind::R;
        case FactorKind::T:
            return cod.kind != FactorKind::T;
    }
    throw std::logic_error("unreachable");
}

// Entry-shape test from the block description of valid representations,
// with domain factor kind cj and codomain factor kind di.
inline bool block_entry_ok(const PrimitiveFactor &dom, const PrimitiveFactor &cod,
                           const Rat &entry) {
    switch (dom.kind) {
        case FactorKind::Z:
            // Z maps anywhere; discrete targets need integer entries.
            if (cod.discrete()) {
                return is_integer(entry);
            }
            return true;
        case FactorKind::R:
            if (cod.kind == FactorKind::R || cod.kind == FactorKind::T) {
                return true;
            }
            return entry == 0;
        case FactorKind::ZN:
            if (cod.kind == FactorKind::ZN) {
                // Multiples of d/gcd(d, c) with c the domain and d the
                // codomain modulus.
                Int step = cod.modulus / int_gcd(cod.modulus, dom.modulus);
                return is_integer(entry / Rat(step));
            }
            if (cod.kind == FactorKind::T) {
                return is_integer(entry * Rat(dom.modulus));
            }
            return entry == 0;
        case FactorKind::T:
            if (cod.kind == FactorKind::T) {
                return is_integer(entry);
            }
            return entry == 0;
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

// A* = Y_G^-1 A^T Y_H, the representation of the dual homomorphism
// alpha*: H* -> G*.
inline MatrixRep dual(const MatrixRep &rep) {
    size_t n = rep.domain.size();
    size_t m = rep.codomain.size();
    RatMat out(n, m);
    for (size_t i = 0; i < n; i++) {
        Rat gi = rep.domain.factors[i].bullet_scale();
        for (size_t j = 0; j < m; j++) {
            Rat hj = rep.codomain.factors[j].bullet_scale();
            out.at(i, j) = rep.mat.at(j, i) * hj / gi;
        }
    }
    return MatrixRep(dual_group(rep.codomain), dual_group(rep.domain), std::move(out));
}

inline void validate(const MatrixRep &rep) {
    const GroupSpec &g = rep.domain;
    const GroupSpec &h = rep.codomain;
    const RatMat &a = rep.mat;
    MatrixRep star = dual(rep);

    bool lemma_ok = true;
    RepErrorKind first_kind = RepErrorKind::NonIntegerRow;
    size_t first_i = 0, first_j = 0;
    auto record = [&](RepErrorKind k, size_t i, size_t j) {
        if (lemma_ok) {
            lemma_ok = false;
            first_kind = k;
            first_i = i;
            first_j = j;
        }
    };

    for (size_t i = 0; i < h.size() && lemma_ok; i++) {
        for (size_t j = 0; j < g.size() && lemma_ok; j++) {
            if (h.factors[i].discrete() && !is_integer(a.at(i, j))) {
                record(RepErrorKind::NonIntegerRow, i, j);
            }
        }
    }
    for (size_t i = 0; i < h.size() && lemma_ok; i++) {
        Rat di = h.factors[i].characteristic();
        for (size_t j = 0; j < g.size() && lemma_ok; j++) {
            Rat cj = g.factors[j].characteristic();
            if (!detail::congruent_zero(cj * a.at(i, j), di)) {
                record(RepErrorKind::ConsistencyPrimal, i, j);
            }
        }
    }
    // Dual side: A* as a candidate representation H* -> G*.
    for (size_t i = 0; i < star.codomain.size() && lemma_ok; i++) {
        Rat di = star.codomain.factors[i].characteristic();
        for (size_t j = 0; j < star.domain.size() && lemma_ok; j++) {
            Rat cj = star.domain.factors[j].characteristic();
            if (star.codomain.factors[i].discrete() && !is_integer(star.mat.at(i, j))) {
                record(RepErrorKind::ConsistencyDual, i, j);
            } else if (!detail::congruent_zero(cj * star.mat.at(i, j), di)) {
                record(RepErrorKind::ConsistencyDual, i, j);
            }
        }
    }

    bool block_ok = true;
    size_t block_i = 0, block_j = 0;
    for (size_t i = 0; i < h.size() && block_ok; i++) {
        for (size_t j = 0; j < g.size() && block_ok; j++) {
            if (!detail::block_entry_ok(g.factors[j], h.factors[i], a.at(i, j))) {
                block_ok = false;
                block_i = i;
                block_j = j;
            }
        }
    }

    if (lemma_ok != block_ok) {
        throw std::logic_error("validate: consistency conditions and block structure disagree at (" +
                               std::to_string(block_i) + ", " + std::to_string(block_j) + ")");
    }
    if (!lemma_ok) {
        if (detail::forbidden_pair(g.factors[block_j], h.factors[block_i])) {
            detail::throw_rep_error(RepErrorKind::ForbiddenBlock, block_i, block_j);
        }
        detail::throw_rep_error(first_kind, first_i, first_j);
    }
}

inline bool is_valid(const MatrixRep &rep) {
    try {
        validate(rep);
        return true;
    } catch (const RepError &) {
        return false;
    }
}

// beta . alpha: matrix product with matching middle group.
inline MatrixRep compose(const MatrixRep &beta, const MatrixRep &alpha) {
    if (alpha.codomain != beta.domain) {
        throw std::invalid_argument("compose: middle groups do not match");
    }
    return MatrixRep(alpha.domain, beta.codomain, beta.mat * alpha.mat);
}

}  // namespace abelsim
