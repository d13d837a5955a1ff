#pragma once

// Circuit representation: a starting group, a basis-state input, and a list
// of gates. Gates are group automorphisms, quadratic phase gates, and
// partial Fourier transforms. A Fourier gate changes the group itself:
// Z and T factors trade places at the transformed registers while Z_N
// factors stay put, so a circuit induces a chain of groups G(0), ..., G(T).

#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/linsolve.hpp"
#include "abelsim/quadratic.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace abelsim {

inline PrimitiveFactor fourier_flip(const PrimitiveFactor &f) { return f.dual(); }

inline GroupSpec fourier_flip(const GroupSpec &g, const std::vector<size_t> &registers) {
    GroupSpec out = g;
    for (size_t r : registers) {
        if (r >= g.size()) {
            throw std::invalid_argument("fourier_flip: register index out of range");
        }
        out.factors[r] = fourier_flip(out.factors[r]);
    }
    return out;
}

enum class GateKind { Automorphism, Quadratic, Fourier };

struct Gate {
    GateKind kind;
    std::optional<MatrixRep> automorphism;
    std::optional<QuadraticFunc> quadratic;
    std::vector<size_t> fourier_registers;
    GroupSpec fourier_group;  // group in front of a Fourier gate

    static Gate make_automorphism(MatrixRep a) {
        if (a.domain != a.codomain) {
            throw std::invalid_argument("automorphism gate: domain and codomain differ");
        }
        Gate g(GateKind::Automorphism);
        g.automorphism = std::move(a);
        return g;
    }

    static Gate make_quadratic(QuadraticFunc q) {
        Gate g(GateKind::Quadratic);
        g.quadratic = std::move(q);
        return g;
    }

    static Gate make_fourier(GroupSpec group, std::vector<size_t> registers) {
        std::sort(registers.begin(), registers.end());
        registers.erase(std::unique(registers.begin(), registers.end()), registers.end());
        if (registers.empty()) {
            throw std::invalid_argument("fourier gate: no registers");
        }
        if (registers.back() >= group.size()) {
            throw std::invalid_argument("fourier gate: register index out of range");
        }
        Gate g(GateKind::Fourier);
        g.fourier_group = std::move(group);
        g.fourier_registers = std::move(registers);
        return g;
    }

    static Gate make_full_fourier(GroupSpec group) {
        std::vector<size_t> regs(group.size());
        for (size_t i = 0; i < regs.size(); i++) {
            regs[i] = i;
        }
        return make_fourier(std::move(group), std::move(regs));
    }

    const GroupSpec &group() const {
        switch (kind) {
            case GateKind::Automorphism:
                return automorphism->domain;
            case GateKind::Quadratic:
                return quadratic->group;
            case GateKind::Fourier:
                return fourier_group;
        }
        throw std::logic_error("unreachable");
    }

    GroupSpec group_after() const {
        if (kind == GateKind::Fourier) {
            return fourier_flip(fourier_group, fourier_registers);
        }
        return group();
    }

  private:
    explicit Gate(GateKind k) : kind(k) {}
};

struct Circuit {
    GroupSpec group;  // G(0)
    RatVec input;     // basis state the run starts from
    std::vector<Gate> gates;
};

inline std::vector<GroupSpec> group_chain(const Circuit &c) {
    std::vector<GroupSpec> chain;
    chain.reserve(c.gates.size() + 1);
    chain.push_back(c.group);
    for (const Gate &g : c.gates) {
        chain.push_back(g.group_after());
    }
    return chain;
}

// Full structural validation: the input must be an element of G(0), no R
// factors may face the circuit, every gate must act on the group produced by
// its predecessors, and automorphism gates must actually be invertible.
// Returns the group chain.
inline std::vector<GroupSpec> validate_circuit(const Circuit &c) {
    if (c.group.has_r_factor()) {
        throw std::invalid_argument("circuit: R factors are not allowed in circuit groups");
    }
    RatVec input = canonicalize(c.group, c.input);
    if (input != c.input) {
        throw std::invalid_argument("circuit: input is not in canonical form");
    }
    std::vector<GroupSpec> chain = group_chain(c);
    for (size_t t = 0; t < c.gates.size(); t++) {
        const Gate &g = c.gates[t];
        if (g.group() != chain[t]) {
            throw std::invalid_argument("circuit: gate " + std::to_string(t) +
                                        " acts on " + g.group().str() + " but the state is in " +
                                        chain[t].str());
        }
        if (g.kind == GateKind::Automorphism) {
            validate(*g.automorphism);
            if (!invert_automorphism(*g.automorphism).has_value()) {
                throw std::invalid_argument("circuit: gate " + std::to_string(t) +
                                            " is not an automorphism");
            }
        }
    }
    return chain;
}

}  // namespace abelsim
