#pragma once

// Brute-force dense state-vector oracle for finite groups. Amplitudes are
// complex doubles indexed in mixed radix with the rightmost coordinate
// running fastest. Deliberately simple and independent of the stabilizer
// machinery so the two can check each other.

#include "abelsim/circuit.hpp"
#include "abelsim/group.hpp"
#include "abelsim/matrix.hpp"
#include "abelsim/quadratic.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelsim {

using Cplx = std::complex<double>;
using CMat = Mat<Cplx>;

inline size_t oracle_cap() {
    if (const char *env = std::getenv("ABELSIM_ORACLE_CAP")) {
        long v = std::atol(env);
        if (v > 0) {
            return static_cast<size_t>(v);
        }
    }
    return 4096;
}

inline size_t oracle_order(const GroupSpec &g) {
    if (!g.is_finite()) {
        throw std::invalid_argument("dense oracle: group must be finite");
    }
    Int n = g.order();
    if (n > Int(oracle_cap())) {
        throw std::invalid_argument("dense oracle: group order " + n.str() +
                                    " exceeds cap " + std::to_string(oracle_cap()));
    }
    return static_cast<size_t>(n);
}

inline size_t dense_index(const GroupSpec &g, const RatVec &x) {
    RatVec c = canonicalize(g, x);
    size_t idx = 0;
    for (size_t i = 0; i < g.size(); i++) {
        idx = idx * static_cast<size_t>(g.factors[i].modulus) +
              static_cast<size_t>(num(c[i]));
    }
    return idx;
}

inline RatVec dense_element(const GroupSpec &g, size_t idx) {
    RatVec x(g.size(), Rat(0));
    for (size_t i = g.size(); i-- > 0;) {
        size_t n = static_cast<size_t>(g.factors[i].modulus);
        x[i] = Rat(idx % n);
        idx /= n;
    }
    return x;
}

struct DenseState {
    GroupSpec group;
    std::vector<Cplx> amp;

    explicit DenseState(GroupSpec g) : group(std::move(g)), amp(oracle_order(group)) {}
};

inline DenseState dense_initial(const GroupSpec &g, const RatVec &x) {
    DenseState s(g);
    s.amp[dense_index(g, x)] = 1.0;
    return s;
}

namespace detail {

inline Cplx root_of_unity(const Rat &turns) {
    static const double two_pi = 6.28318530717958647692;
    double t = two_pi * static_cast<double>(rat_mod(turns, Rat(1)));
    return {std::cos(t), std::sin(t)};
}

}  // namespace detail

inline DenseState dense_apply(const Gate &gate, const DenseState &in) {
    if (in.group != gate.group()) {
        throw std::invalid_argument("dense_apply: state group does not match gate group");
    }
    switch (gate.kind) {
        case GateKind::Automorphism: {
            DenseState out(in.group);
            for (size_t i = 0; i < in.amp.size(); i++) {
                if (in.amp[i] == 0.0) {
                    continue;
                }
                RatVec x = dense_element(in.group, i);
                out.amp[dense_index(in.group, gate.automorphism->apply(x))] += in.amp[i];
            }
            return out;
        }
        case GateKind::Quadratic: {
            DenseState out = in;
            for (size_t i = 0; i < out.amp.size(); i++) {
                if (out.amp[i] == 0.0) {
                    continue;
                }
                out.amp[i] *= gate.quadratic->evaluate(dense_element(in.group, i)).to_complex();
            }
            return out;
        }
        case GateKind::Fourier: {
            DenseState cur = in;
            for (size_t reg : gate.fourier_registers) {
                size_t n = static_cast<size_t>(in.group.factors[reg].modulus);
                double norm = 1.0 / std::sqrt(static_cast<double>(n));
                DenseState next(in.group);
                for (size_t i = 0; i < cur.amp.size(); i++) {
                    if (cur.amp[i] == 0.0) {
                        continue;
                    }
                    RatVec x = dense_element(in.group, i);
                    Rat xr = x[reg];
                    for (size_t y = 0; y < n; y++) {
                        RatVec z = x;
                        z[reg] = Rat(y);
                        next.amp[dense_index(in.group, z)] +=
                            cur.amp[i] * detail::root_of_unity(xr * Rat(y, Int(n))) * norm;
                    }
                }
                cur = std::move(next);
            }
            return cur;
        }
    }
    throw std::logic_error("unreachable");
}

inline DenseState dense_run(const Circuit &c) {
    DenseState s = dense_initial(c.group, c.input);
    for (const Gate &g : c.gates) {
        s = dense_apply(g, s);
    }
    return s;
}

// Basis elements carrying non-negligible weight, at a relative tolerance.
inline std::vector<RatVec> dense_support(const DenseState &s, double rel_tol = 1e-6) {
    double peak = 0.0;
    for (const Cplx &a : s.amp) {
        peak = std::max(peak, std::abs(a));
    }
    std::vector<RatVec> out;
    if (peak == 0.0) {
        return out;
    }
    for (size_t i = 0; i < s.amp.size(); i++) {
        if (std::abs(s.amp[i]) > rel_tol * peak) {
            out.push_back(dense_element(s.group, i));
        }
    }
    return out;
}

// Full unitary of a gate, for conjugation checks.
inline CMat dense_gate_matrix(const Gate &gate) {
    size_t n = oracle_order(gate.group());
    CMat u(n, n);
    for (size_t j = 0; j < n; j++) {
        DenseState col = dense_apply(
            gate, dense_initial(gate.group(), dense_element(gate.group(), j)));
        for (size_t i = 0; i < n; i++) {
            u.at(i, j) = col.amp[i];
        }
    }
    return u;
}

// Matrix of gamma Z(mu) X(g): |h> -> gamma chi_mu(h + g) |h + g>.
inline CMat dense_pauli_matrix(const GroupSpec &group, const Phase &gamma, const RatVec &mu,
                               const RatVec &g) {
    size_t n = oracle_order(group);
    RatVec mu_c = canonicalize(dual_group(group), mu);
    CMat p(n, n);
    for (size_t j = 0; j < n; j++) {
        RatVec h = dense_element(group, j);
        RatVec hg = canonicalize(group, add(h, g));
        p.at(dense_index(group, hg), j) =
            gamma.to_complex() * character(group, mu_c, hg).to_complex();
    }
    return p;
}

inline CMat dense_adjoint(const CMat &m) {
    CMat out(m.cols(), m.rows());
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            out.at(j, i) = std::conj(m.at(i, j));
        }
    }
    return out;
}

inline CMat dense_conjugate(const CMat &u, const CMat &m) { return u * m * dense_adjoint(u); }

inline double max_abs_diff(const CMat &a, const CMat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double d = 0.0;
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            d = std::max(d, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return d;
}

}  // namespace abelsim
