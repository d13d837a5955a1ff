#pragma once

// Quadratic phase functions xi_{M,v}(g) = exp(i pi (g^T M g + C^T g + 2 v^T g))
// over an elementary Abelian group G, with M symmetric, C(i) = M(i,i) c_i the
// diagonal correction that makes the quadratic part representative-invariant
// (c_i the characteristic of factor i), and v an element of the bullet group
// G•. Validity of M means Upsilon^{-1} M is a representation G -> G*.
//
// These are closed under products and under pullback along homomorphisms,
// which is all the stabilizer tracking needs.

#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/matrix.hpp"
#include "abelsim/rational.hpp"

#include <stdexcept>
#include <utility>

namespace abelsim {

namespace detail {

inline bool in_bullet_lattice(const GroupSpec &g, const RatVec &x) {
    if (x.size() != g.size()) {
        return false;
    }
    for (size_t i = 0; i < g.size(); i++) {
        switch (g.factors[i].kind) {
            case FactorKind::Z:
            case FactorKind::R:
                break;
            case FactorKind::ZN:
                if (!is_integer(x[i] * Rat(g.factors[i].modulus))) {
                    return false;
                }
                break;
            case FactorKind::T:
                if (!is_integer(x[i])) {
                    return false;
                }
                break;
        }
    }
    return true;
}

inline RatMat bullet_inverse_matrix(const GroupSpec &g) {
    RatMat m(g.size(), g.size());
    for (size_t i = 0; i < g.size(); i++) {
        m.at(i, i) = Rat(1) / g.factors[i].bullet_scale();
    }
    return m;
}

}  // namespace detail

struct QuadraticFunc {
    GroupSpec group;
    RatMat m;  // symmetric quadratic part
    RatVec v;  // linear part, canonical in G•

    // Marks constructions whose validity follows algebraically from already
    // validated inputs (sums, negations, and pullbacks of valid quadratic
    // functions), so the per-entry checks can be skipped on hot paths.
    struct Trusted {};

    QuadraticFunc(GroupSpec g, RatMat m_, RatVec v_)
        : group(std::move(g)), m(std::move(m_)), v(std::move(v_)) {
        size_t n = group.size();
        if (m.rows() != n || m.cols() != n || v.size() != n) {
            throw std::invalid_argument("QuadraticFunc: shape mismatch");
        }
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j < n; j++) {
                if (m.at(i, j) != m.at(j, i)) {
                    throw std::invalid_argument("QuadraticFunc: M is not symmetric");
                }
            }
        }
        try {
            validate(MatrixRep(group, dual_group(group), detail::bullet_inverse_matrix(group) * m));
        } catch (const RepError &e) {
            throw std::invalid_argument(
                std::string("QuadraticFunc: quadratic part is not valid: ") + e.what());
        }
        v = canonicalize_bullet(group, std::move(v));
    }

    QuadraticFunc(Trusted, GroupSpec g, RatMat m_, RatVec v_)
        : group(std::move(g)), m(std::move(m_)), v(std::move(v_)) {
        if (m.rows() != group.size() || m.cols() != group.size() || v.size() != group.size()) {
            throw std::invalid_argument("QuadraticFunc: shape mismatch");
        }
        v = canonicalize_bullet(group, std::move(v));
    }

    // Diagonal correction vector C with C(i) = M(i,i) * c_i.
    RatVec cvec() const {
        RatVec c(group.size());
        for (size_t i = 0; i < group.size(); i++) {
            c[i] = m.at(i, i) * group.factors[i].characteristic();
        }
        return c;
    }

    Phase evaluate(RatVec g) const {
        g = canonicalize(group, std::move(g));
        Rat e(0);
        for (size_t i = 0; i < group.size(); i++) {
            for (size_t j = 0; j < group.size(); j++) {
                e += g[i] * m.at(i, j) * g[j];
            }
        }
        RatVec c = cvec();
        for (size_t i = 0; i < group.size(); i++) {
            e += (c[i] + 2 * v[i]) * g[i];
        }
        return Phase::unit(e);
    }

    // B(g, h) = e^{2 pi i g^T M h}, the bicharacter with
    // xi(g + h) = xi(g) xi(h) B(g, h).
    Phase bicharacter(const RatVec &g, const RatVec &h) const {
        RatVec cg = canonicalize(group, g);
        RatVec ch = canonicalize(group, h);
        Rat e(0);
        for (size_t i = 0; i < group.size(); i++) {
            for (size_t j = 0; j < group.size(); j++) {
                e += cg[i] * m.at(i, j) * ch[j];
            }
        }
        return Phase::unit(2 * e);
    }

    QuadraticFunc conj() const {
        RatVec nv(v.size());
        for (size_t i = 0; i < v.size(); i++) {
            nv[i] = -v[i];
        }
        return QuadraticFunc(Trusted{}, group, -m, std::move(nv));
    }

    bool operator==(const QuadraticFunc &o) const {
        return group == o.group && m == o.m && v == o.v;
    }
};

inline QuadraticFunc trivial_quadratic(const GroupSpec &g) {
    return QuadraticFunc(QuadraticFunc::Trusted{}, g, RatMat(g.size(), g.size()),
                         RatVec(g.size(), Rat(0)));
}

// Builds a quadratic function from a possibly non-symmetric coefficient
// matrix; g^T M g only sees (M + M^T)/2, so symmetrizing never changes the
// pointwise values.
inline QuadraticFunc make_quadratic(const GroupSpec &g, const RatMat &m_any, RatVec v) {
    if (m_any.rows() != g.size() || m_any.cols() != g.size()) {
        throw std::invalid_argument("make_quadratic: shape mismatch");
    }
    RatMat sym(g.size(), g.size());
    for (size_t i = 0; i < g.size(); i++) {
        for (size_t j = 0; j < g.size(); j++) {
            sym.at(i, j) = (m_any.at(i, j) + m_any.at(j, i)) / 2;
        }
    }
    return QuadraticFunc(g, std::move(sym), std::move(v));
}

inline QuadraticFunc multiply(const QuadraticFunc &a, const QuadraticFunc &b) {
    if (a.group != b.group) {
        throw std::invalid_argument("multiply: quadratic functions over different groups");
    }
    return QuadraticFunc(QuadraticFunc::Trusted{}, a.group, a.m + b.m, add(a.v, b.v));
}

namespace detail {

// The two sides of a pullback match as functions iff the residual linear
// functional lambda is identically 0 mod 2 on the domain: exactly zero on
// continuous factors, even on discrete ones.
inline bool linear_part_trivial(const GroupSpec &g, const RatVec &lambda) {
    for (size_t i = 0; i < g.size(); i++) {
        if (g.factors[i].discrete()) {
            if (rat_mod(lambda[i], Rat(2)) != 0) {
                return false;
            }
        } else if (lambda[i] != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

// xi ∘ alpha for a representation alpha: H -> G; the result is a quadratic
// function on H. The linear part keeps track of the change in the diagonal
// correction term.
inline QuadraticFunc pullback(const QuadraticFunc &q, const MatrixRep &alpha) {
    if (alpha.codomain != q.group) {
        throw std::invalid_argument("pullback: representation does not land in the function's group");
    }
    const GroupSpec &h = alpha.domain;
    RatMat at = alpha.mat.transposed();
    RatMat m2 = at * q.m * alpha.mat;
    RatVec atc = at * q.cvec();
    RatVec base = at * q.v;
    RatVec c2(h.size());
    for (size_t i = 0; i < h.size(); i++) {
        c2[i] = m2.at(i, i) * h.factors[i].characteristic();
    }
    auto assemble = [&](const Rat &shift_scale) {
        RatVec v2(h.size());
        for (size_t i = 0; i < h.size(); i++) {
            v2[i] = base[i] + (atc[i] - c2[i]) * shift_scale;
        }
        return v2;
    };
    for (Rat scale : {Rat(1, 2), Rat(1)}) {
        RatVec v2 = assemble(scale);
        if (!detail::in_bullet_lattice(h, v2)) {
            continue;
        }
        QuadraticFunc out(QuadraticFunc::Trusted{}, h, m2, std::move(v2));
        RatVec lambda(h.size());
        for (size_t i = 0; i < h.size(); i++) {
            lambda[i] = atc[i] + 2 * base[i] - c2[i] - 2 * out.v[i];
        }
        if (detail::linear_part_trivial(h, lambda)) {
            return out;
        }
    }
    throw std::logic_error("pullback: no consistent linear part found");
}

}  // namespace abelsim
