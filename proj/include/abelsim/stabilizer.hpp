#pragma once

// Pauli operators over an elementary Abelian group and the stabilizer-side
// simulation. A Pauli operator is gamma Z(mu) X(g) with
// X(g)|h> = |h+g>, Z(mu)|h> = chi_mu(h)|h>. The stabilizer group of a
// circuit state is tracked as a homomorphism Lambda from a fixed parameter
// group P into the label group Gamma(t) = G(t)* x G(t), together with a
// quadratic function xi on Gamma(t) providing the phases:
//
//   sigma(u) = xi(Lambda u) Z(mu) X(g),  (mu, g) = Lambda u.
//
// Gates act by an invertible label map A on Gamma plus a quadratic phase
// correction phi, giving Lambda' = A Lambda and xi' = (xi * phi) ∘ A^{-1}.

#include "abelsim/circuit.hpp"
#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/linsolve.hpp"
#include "abelsim/matrix.hpp"
#include "abelsim/quadratic.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace abelsim {

struct PauliOp {
    GroupSpec group;
    Phase gamma;
    RatVec mu;  // canonical in G*
    RatVec g;   // canonical in G

    PauliOp(GroupSpec grp, Phase ph, RatVec mu_, RatVec g_)
        : group(std::move(grp)), gamma(ph), mu(std::move(mu_)), g(std::move(g_)) {
        mu = canonicalize(dual_group(group), std::move(mu));
        g = canonicalize(group, std::move(g));
    }

    bool operator==(const PauliOp &o) const {
        return group == o.group && gamma == o.gamma && mu == o.mu && g == o.g;
    }
    bool operator!=(const PauliOp &o) const { return !(*this == o); }
};

// Z(mu) X(g) Z(nu) X(h) = conj(chi_nu(g)) Z(mu + nu) X(g + h).
inline PauliOp pauli_multiply(const PauliOp &a, const PauliOp &b) {
    if (a.group != b.group) {
        throw std::invalid_argument("pauli_multiply: operators over different groups");
    }
    Phase gamma = a.gamma * b.gamma * character(a.group, b.mu, a.g).conj();
    return PauliOp(a.group, gamma, add(a.mu, b.mu), add(a.g, b.g));
}

inline bool pauli_commute(const PauliOp &a, const PauliOp &b) {
    return character(a.group, a.mu, b.g) == character(a.group, b.mu, a.g);
}

// U sigma U^dagger for a single gate.
inline PauliOp conjugate_pauli(const Gate &gate, const PauliOp &p) {
    if (gate.group() != p.group) {
        throw std::invalid_argument("conjugate_pauli: gate group does not match operator group");
    }
    switch (gate.kind) {
        case GateKind::Automorphism: {
            const MatrixRep &alpha = *gate.automorphism;
            auto ainv = invert_automorphism(alpha);
            if (!ainv) {
                throw std::invalid_argument("conjugate_pauli: gate is not an automorphism");
            }
            return PauliOp(p.group, p.gamma, dual(*ainv).apply(p.mu), alpha.apply(p.g));
        }
        case GateKind::Quadratic: {
            const QuadraticFunc &q = *gate.quadratic;
            // beta(g) = Upsilon^{-1} M_Q g shifts the Z label; the scalar picks
            // up xi_Q(g) conj(chi_{beta(g)}(g)) and chi_{beta(g)}(g) = e^{2 pi i g^T M_Q g}.
            RatVec beta = detail::bullet_inverse_matrix(p.group) * (q.m * p.g);
            Rat gmg(0);
            for (size_t i = 0; i < p.group.size(); i++) {
                for (size_t j = 0; j < p.group.size(); j++) {
                    gmg += p.g[i] * q.m.at(i, j) * p.g[j];
                }
            }
            Phase gamma = p.gamma * q.evaluate(p.g) * Phase::unit(-2 * gmg);
            return PauliOp(p.group, gamma, add(p.mu, beta), p.g);
        }
        case GateKind::Fourier: {
            GroupSpec flipped = gate.group_after();
            RatVec mu = p.mu;
            RatVec g = p.g;
            Phase gamma = p.gamma;
            for (size_t i : gate.fourier_registers) {
                gamma = gamma * Phase::unit(2 * p.group.factors[i].bullet_scale() *
                                            p.mu[i] * p.g[i]);
                mu[i] = p.g[i];
                g[i] = -p.mu[i];
            }
            return PauliOp(flipped, gamma, std::move(mu), std::move(g));
        }
    }
    throw std::logic_error("unreachable");
}

struct StabilizerDesc {
    GroupSpec group;     // G(t), the group the state currently lives in
    GroupSpec param;     // parameter group P of the stabilizer generators
    MatrixRep lambda;    // P -> Gamma(t)
    QuadraticFunc xi;    // phase function on Gamma(t)
};

inline PauliOp stabilizer_element(const StabilizerDesc &desc, const RatVec &u) {
    RatVec label = desc.lambda.apply(u);
    size_t m = desc.group.size();
    RatVec mu(label.begin(), label.begin() + m);
    RatVec g(label.begin() + m, label.end());
    return PauliOp(desc.group, desc.xi.evaluate(label), std::move(mu), std::move(g));
}

// Stabilizer description of the basis state |x>: sigma(mu, .) = conj(chi_mu(x)) Z(mu).
inline StabilizerDesc initial_state(const GroupSpec &g, const RatVec &x) {
    RatVec xc = canonicalize(g, x);
    size_t m = g.size();
    GroupSpec gamma = pauli_label_group(g);
    RatMat lam(2 * m, 2 * m);
    for (size_t i = 0; i < m; i++) {
        lam.at(i, i) = 1;
    }
    RatVec v(2 * m, Rat(0));
    RatVec bx = bullet(g, xc);
    for (size_t i = 0; i < m; i++) {
        v[i] = -bx[i];
    }
    return StabilizerDesc{g, gamma, MatrixRep(gamma, gamma, std::move(lam)),
                          QuadraticFunc(gamma, RatMat(2 * m, 2 * m), std::move(v))};
}

namespace detail {

struct LabelAction {
    MatrixRep fwd;   // Gamma(t) -> Gamma(t+1)
    MatrixRep bwd;   // Gamma(t+1) -> Gamma(t)
    QuadraticFunc phi;  // scalar correction, a quadratic function on Gamma(t)
    GroupSpec group_after;
};

inline LabelAction label_action(const Gate &gate) {
    const GroupSpec &g = gate.group();
    const size_t m = g.size();
    GroupSpec gamma = pauli_label_group(g);
    switch (gate.kind) {
        case GateKind::Automorphism: {
            const MatrixRep &alpha = *gate.automorphism;
            auto ainv = invert_automorphism(alpha);
            if (!ainv) {
                throw std::invalid_argument("label_action: gate is not an automorphism");
            }
            RatMat fwd(2 * m, 2 * m);
            RatMat bwd(2 * m, 2 * m);
            fwd.set_block(0, 0, dual(*ainv).mat);
            fwd.set_block(m, m, alpha.mat);
            bwd.set_block(0, 0, dual(alpha).mat);
            bwd.set_block(m, m, ainv->mat);
            return {MatrixRep(gamma, gamma, std::move(fwd)),
                    MatrixRep(gamma, gamma, std::move(bwd)), trivial_quadratic(gamma), g};
        }
        case GateKind::Quadratic: {
            const QuadraticFunc &q = *gate.quadratic;
            RatMat mbeta = bullet_inverse_matrix(g) * q.m;
            RatMat fwd = to_rational(IntMat::identity(2 * m));
            RatMat bwd = to_rational(IntMat::identity(2 * m));
            fwd.set_block(0, m, mbeta);
            bwd.set_block(0, m, -mbeta);
            RatMat mphi(2 * m, 2 * m);
            mphi.set_block(m, m, -q.m);
            RatVec vphi(2 * m, Rat(0));
            RatVec cq = q.cvec();
            for (size_t i = 0; i < m; i++) {
                vphi[m + i] = q.v[i] + cq[i];
            }
            return {MatrixRep(gamma, gamma, std::move(fwd)),
                    MatrixRep(gamma, gamma, std::move(bwd)),
                    QuadraticFunc(QuadraticFunc::Trusted{}, gamma, std::move(mphi),
                                  std::move(vphi)),
                    g};
        }
        case GateKind::Fourier: {
            GroupSpec flipped = gate.group_after();
            GroupSpec gamma_after = pauli_label_group(flipped);
            RatMat fwd = to_rational(IntMat::identity(2 * m));
            RatMat bwd = to_rational(IntMat::identity(2 * m));
            RatMat mphi(2 * m, 2 * m);
            for (size_t i : gate.fourier_registers) {
                fwd.at(i, i) = 0;
                fwd.at(m + i, m + i) = 0;
                fwd.at(i, m + i) = 1;
                fwd.at(m + i, i) = -1;
                bwd.at(i, i) = 0;
                bwd.at(m + i, m + i) = 0;
                bwd.at(i, m + i) = -1;
                bwd.at(m + i, i) = 1;
                mphi.at(i, m + i) = g.factors[i].bullet_scale();
                mphi.at(m + i, i) = g.factors[i].bullet_scale();
            }
            return {MatrixRep(gamma, gamma_after, std::move(fwd)),
                    MatrixRep(gamma_after, gamma, std::move(bwd)),
                    QuadraticFunc(QuadraticFunc::Trusted{}, gamma, std::move(mphi),
                                  RatVec(2 * m, Rat(0))),
                    flipped};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

inline StabilizerDesc apply_gate(const StabilizerDesc &desc, const Gate &gate) {
    if (gate.group() != desc.group) {
        throw std::invalid_argument("apply_gate: gate group does not match state group");
    }
    detail::LabelAction act = detail::label_action(gate);
    QuadraticFunc xi = pullback(multiply(desc.xi, act.phi), act.bwd);
    MatrixRep lambda = compose(act.fwd, desc.lambda);
    return StabilizerDesc{act.group_after, desc.param, std::move(lambda), std::move(xi)};
}

inline StabilizerDesc simulate(const Circuit &c) {
    validate_circuit(c);
    StabilizerDesc desc = initial_state(c.group, c.input);
    for (const Gate &g : c.gates) {
        desc = apply_gate(desc, g);
    }
    return desc;
}

}  // namespace abelsim
