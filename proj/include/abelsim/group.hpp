#pragma once

// Elementary locally compact Abelian groups assembled from the primitive
// factors Z, R, Z_N and T = R/Z, their duals, characters, the bullet map
// and the group norm.
//
// Elements are coordinate vectors of rationals. A coordinate is canonical
// when it is the standard representative of its factor: any integer for Z,
// an integer in [0, N) for Z_N, a rational in [0, 1) for T, and unrestricted
// for R. R factors never appear in circuit-facing groups; they exist so that
// solution sets of linear systems can be described.

#include "abelsim/matrix.hpp"
#include "abelsim/rational.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelsim {

enum class FactorKind { Z, R, ZN, T };

struct PrimitiveFactor {
    FactorKind kind = FactorKind::Z;
    Int modulus = 0;  // only meaningful for ZN, where it is >= 1

    static PrimitiveFactor z() { return {FactorKind::Z, 0}; }
    static PrimitiveFactor r() { return {FactorKind::R, 0}; }
    static PrimitiveFactor t() { return {FactorKind::T, 0}; }
    static PrimitiveFactor zn(Int n) {
        if (n < 1) {
            throw std::invalid_argument("PrimitiveFactor: Z_N needs N >= 1");
        }
        return {FactorKind::ZN, std::move(n)};
    }

    // Characteristic c: the group is {x : x = y mod c} for representatives y,
    // with c = 0 meaning no identification (Z, R), c = N for Z_N, c = 1 for T.
    Rat characteristic() const {
        switch (kind) {
            case FactorKind::Z:
            case FactorKind::R:
                return Rat(0);
            case FactorKind::ZN:
                return Rat(modulus);
            case FactorKind::T:
                return Rat(1);
        }
        throw std::logic_error("unreachable");
    }

    // Diagonal entry of the bullet matrix Upsilon.
    Rat bullet_scale() const {
        if (kind == FactorKind::ZN) {
            return Rat(1, modulus);
        }
        return Rat(1);
    }

    // The factor of the bullet group: Z maps to T, T to Z, Z_N to the cyclic
    // group {0, 1/N, ..., (N-1)/N} inside T, and R to R.
    Rat bullet_characteristic() const {
        switch (kind) {
            case FactorKind::Z:
            case FactorKind::ZN:
                return Rat(1);
            case FactorKind::T:
            case FactorKind::R:
                return Rat(0);
        }
        throw std::logic_error("unreachable");
    }

    PrimitiveFactor dual() const {
        switch (kind) {
            case FactorKind::Z:
                return t();
            case FactorKind::T:
                return z();
            case FactorKind::R:
                return r();
            case FactorKind::ZN:
                return zn(modulus);
        }
        throw std::logic_error("unreachable");
    }

    bool discrete() const { return kind == FactorKind::Z || kind == FactorKind::ZN; }
    bool finite() const { return kind == FactorKind::ZN; }

    bool operator==(const PrimitiveFactor &o) const {
        return kind == o.kind && (kind != FactorKind::ZN || modulus == o.modulus);
    }
    bool operator!=(const PrimitiveFactor &o) const { return !(*this == o); }

    std::string str() const {
        switch (kind) {
            case FactorKind::Z:
                return "Z";
            case FactorKind::R:
                return "R";
            case FactorKind::T:
                return "T";
            case FactorKind::ZN:
                return "Z_" + modulus.str();
        }
        throw std::logic_error("unreachable");
    }
};

struct GroupSpec {
    std::vector<PrimitiveFactor> factors;

    GroupSpec() = default;
    explicit GroupSpec(std::vector<PrimitiveFactor> f) : factors(std::move(f)) {}

    size_t size() const { return factors.size(); }

    bool is_finite() const {
        for (const auto &f : factors) {
            if (!f.finite()) {
                return false;
            }
        }
        return true;
    }

    bool has_r_factor() const {
        for (const auto &f : factors) {
            if (f.kind == FactorKind::R) {
                return true;
            }
        }
        return false;
    }

    // Order of a finite group; throws for infinite groups.
    Int order() const {
        Int n(1);
        for (const auto &f : factors) {
            if (!f.finite()) {
                throw std::domain_error("order: group is infinite");
            }
            n *= f.modulus;
        }
        return n;
    }

    bool operator==(const GroupSpec &o) const { return factors == o.factors; }
    bool operator!=(const GroupSpec &o) const { return !(*this == o); }

    std::string str() const {
        if (factors.empty()) {
            return "1";
        }
        std::string out;
        for (size_t i = 0; i < factors.size(); i++) {
            if (i > 0) {
                out += " x ";
            }
            out += factors[i].str();
        }
        return out;
    }
};

inline GroupSpec dual_group(const GroupSpec &g) {
    std::vector<PrimitiveFactor> out;
    out.reserve(g.size());
    for (const auto &f : g.factors) {
        out.push_back(f.dual());
    }
    return GroupSpec(std::move(out));
}

// G* x G, the label group of Pauli operators over G.
inline GroupSpec pauli_label_group(const GroupSpec &g) {
    GroupSpec out = dual_group(g);
    out.factors.insert(out.factors.end(), g.factors.begin(), g.factors.end());
    return out;
}

// Diagonal of the bullet matrix Upsilon_G.
inline RatMat bullet_matrix(const GroupSpec &g) {
    RatMat m(g.size(), g.size());
    for (size_t i = 0; i < g.size(); i++) {
        m.at(i, i) = g.factors[i].bullet_scale();
    }
    return m;
}

// Reduces coordinates to canonical representatives. Throws
// std::invalid_argument when a coordinate is not in the factor at all
// (non-integer coordinate of a discrete factor).
inline RatVec canonicalize(const GroupSpec &g, RatVec x) {
    if (x.size() != g.size()) {
        throw std::invalid_argument("canonicalize: coordinate count mismatch");
    }
    for (size_t i = 0; i < x.size(); i++) {
        const PrimitiveFactor &f = g.factors[i];
        switch (f.kind) {
            case FactorKind::Z:
                if (!is_integer(x[i])) {
                    throw std::invalid_argument("canonicalize: non-integer Z coordinate");
                }
                break;
            case FactorKind::R:
                break;
            case FactorKind::ZN:
                if (!is_integer(x[i])) {
                    throw std::invalid_argument("canonicalize: non-integer Z_N coordinate");
                }
                x[i] = Rat(mod_floor(num(x[i]), f.modulus));
                break;
            case FactorKind::T:
                x[i] = rat_mod(x[i], Rat(1));
                break;
        }
    }
    return x;
}

inline bool is_canonical(const GroupSpec &g, const RatVec &x) {
    if (x.size() != g.size()) {
        return false;
    }
    RatVec c;
    try {
        c = canonicalize(g, x);
    } catch (const std::invalid_argument &) {
        return false;
    }
    return c == x;
}

// Reduces a vector of the bullet group G• to canonical representatives. The
// bullet factor of Z_N consists of the multiples of 1/N inside [0, 1); a
// coordinate outside that lattice is rejected.
inline RatVec canonicalize_bullet(const GroupSpec &g, RatVec x) {
    if (x.size() != g.size()) {
        throw std::invalid_argument("canonicalize_bullet: coordinate count mismatch");
    }
    for (size_t i = 0; i < x.size(); i++) {
        const PrimitiveFactor &f = g.factors[i];
        switch (f.kind) {
            case FactorKind::Z:
                x[i] = rat_mod(x[i], Rat(1));
                break;
            case FactorKind::R:
                break;
            case FactorKind::ZN:
                if (!is_integer(x[i] * Rat(f.modulus))) {
                    throw std::invalid_argument(
                        "canonicalize_bullet: coordinate not a multiple of 1/N");
                }
                x[i] = rat_mod(x[i], Rat(1));
                break;
            case FactorKind::T:
                if (!is_integer(x[i])) {
                    throw std::invalid_argument("canonicalize_bullet: non-integer T• coordinate");
                }
                break;
        }
    }
    return x;
}

// Bullet map G -> G•, x -> Upsilon x, on canonical coordinates.
inline RatVec bullet(const GroupSpec &g, const RatVec &x) {
    RatVec out = x;
    for (size_t i = 0; i < g.size(); i++) {
        out[i] *= g.factors[i].bullet_scale();
    }
    return out;
}

// Unit phase e^{i pi r} with the exponent r kept exactly, reduced mod 2.
struct Phase {
    Rat r;  // in [0, 2)

    Phase() : r(0) {}

    static Phase one() { return Phase(); }
    static Phase unit(const Rat &exponent) {
        Phase p;
        p.r = rat_mod(exponent, Rat(2));
        return p;
    }

    Phase operator*(const Phase &o) const { return unit(r + o.r); }
    Phase conj() const { return unit(-r); }

    bool operator==(const Phase &o) const { return r == o.r; }
    bool operator!=(const Phase &o) const { return r != o.r; }

    std::complex<double> to_complex() const {
        static const double pi = 3.14159265358979323846;
        double x = pi * static_cast<double>(r);
        return {std::cos(x), std::sin(x)};
    }

    std::string str() const { return "exp(" + to_string(r) + "*i*pi)"; }
};

// Character pairing chi_mu(x) for mu in G* and x in G, both canonical:
// chi_mu(x) = e^{2 pi i mu^bullet . x}.
inline Phase character(const GroupSpec &g, const RatVec &mu, const RatVec &x) {
    if (mu.size() != g.size() || x.size() != g.size()) {
        throw std::invalid_argument("character: coordinate count mismatch");
    }
    Rat s(0);
    for (size_t i = 0; i < g.size(); i++) {
        s += g.factors[i].bullet_scale() * mu[i] * x[i];
    }
    return Phase::unit(2 * s);
}

// Squared group norm: each coordinate contributes the square of its
// minimal-norm representative. The tie x = 1/2 (or N/2) keeps the positive
// representative.
inline Rat norm_sq(const GroupSpec &g, const RatVec &x) {
    if (x.size() != g.size()) {
        throw std::invalid_argument("norm_sq: coordinate count mismatch");
    }
    Rat out(0);
    for (size_t i = 0; i < g.size(); i++) {
        const PrimitiveFactor &f = g.factors[i];
        Rat c = f.characteristic();
        Rat v = x[i];
        if (c != 0) {
            v = rat_mod(v, c);
            if (2 * v > c) {
                v -= c;
            }
        }
        out += v * v;
    }
    return out;
}

}  // namespace abelsim
