#pragma once

// (Delta, eps)-nets of closed subgroups H = im(E) + offset, where E is a
// homomorphism R^alpha x Z^beta -> G, and uniform sampling of net points.
//
// The real parameters are discretized to multiples of eps1 with
// eps1 <= 2 eps / (alpha * r_a * |E|), where a is the torus dimension of G,
// r_a the least rational k/8 with (k/8)^2 >= a, and |E| the largest absolute
// entry. Schur's bound on the operator norm of the torus-row/real-column
// block of E then keeps every point of H within group norm eps of a lattice
// image point. The discretized lattice Z^(alpha+beta) maps onto an eps-net
// of H; the Smith normal form A = U S V of a kernel basis A of that map
// turns the lattice quotient into sum_i Z_{sigma_i} x Z^f with the columns
// of E' U as generator images. Ranging compact coefficients over their full
// orders and free coefficients over [-Delta_j, Delta_j] enumerates net
// points without collisions.

#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/linsolve.hpp"
#include "abelsim/matrix.hpp"
#include "abelsim/rational.hpp"
#include "abelsim/snf.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace abelsim {

struct NetSpec {
    GroupSpec group;
    RatVec offset;  // canonical in group
    Rat eps;
    Rat eps1;                         // discretization step of the real parameters
    std::vector<RatVec> compact_gens;  // generator images with finite order
    std::vector<Int> compact_orders;   // sigma_i >= 2, coefficient range [0, sigma_i)
    std::vector<RatVec> free_gens;     // generator images of infinite order
    std::vector<Int> deltas;           // coefficient range [-Delta_j, Delta_j]

    size_t coefficient_count() const { return compact_gens.size() + free_gens.size(); }

    Int point_count() const {
        Int n(1);
        for (const Int &s : compact_orders) {
            n *= s;
        }
        for (const Int &d : deltas) {
            n *= 2 * d + 1;
        }
        return n;
    }

    // Net point for compact coefficients t_i followed by free coefficients u_j.
    RatVec point(const IntVec &coeff) const {
        if (coeff.size() != coefficient_count()) {
            throw std::invalid_argument("NetSpec::point: coefficient count mismatch");
        }
        RatVec x = offset;
        for (size_t i = 0; i < compact_gens.size(); i++) {
            for (size_t k = 0; k < x.size(); k++) {
                x[k] += Rat(coeff[i]) * compact_gens[i][k];
            }
        }
        for (size_t j = 0; j < free_gens.size(); j++) {
            for (size_t k = 0; k < x.size(); k++) {
                x[k] += Rat(coeff[compact_gens.size() + j]) * free_gens[j][k];
            }
        }
        return canonicalize(group, std::move(x));
    }
};

namespace detail {

// Least k/8 with (k/8)^2 >= a, the rational stand-in for sqrt(a).
inline Rat rational_sqrt_bound(size_t a) {
    Int k(0);
    while (k * k < Int(64) * Int(a)) {
        k++;
    }
    return Rat(k, 8);
}

inline Rat max_abs_entry(const RatMat &m) {
    Rat best(0);
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            Rat v = m.at(i, j) < 0 ? -m.at(i, j) : m.at(i, j);
            if (v > best) {
                best = v;
            }
        }
    }
    return best;
}

}  // namespace detail

inline NetSpec build_net(const MatrixRep &e_in, const Rat &eps, std::vector<Int> deltas,
                         const RatVec &offset) {
    if (eps <= 0 || 2 * eps > 1) {
        throw std::invalid_argument("build_net: eps must lie in (0, 1/2]");
    }
    MatrixRep e = normalize_solution_domain(e_in);
    const GroupSpec &g = e.codomain;
    size_t alpha = 0;
    for (const auto &f : e.domain.factors) {
        if (f.kind == FactorKind::R) {
            alpha++;
        }
    }
    size_t beta = e.domain.size() - alpha;
    size_t a = 0;
    for (const auto &f : g.factors) {
        if (f.kind == FactorKind::T) {
            a++;
        }
    }
    Rat abs_e = detail::max_abs_entry(e.mat);

    Rat eps1(1);
    if (alpha > 0 && a > 0 && abs_e > 0) {
        eps1 = 2 * eps / (Rat(alpha) * detail::rational_sqrt_bound(a) * abs_e);
    }

    // E' = E (eps1 I_alpha ⊕ I_beta), viewed on the all-integer lattice.
    const size_t q = alpha + beta;
    RatMat ep = e.mat;
    for (size_t j = 0; j < alpha; j++) {
        for (size_t i = 0; i < g.size(); i++) {
            ep.at(i, j) *= eps1;
        }
    }
    MatrixRep eprime(detail::free_group(0, q), g, ep);

    MatrixRep ker = kernel(eprime);
    SnfResult s = snf(to_integer(ker.mat));
    RatMat e_iso = eprime.mat * to_rational(s.U);

    NetSpec net;
    net.group = g;
    net.offset = canonicalize(g, offset);
    net.eps = eps;
    net.eps1 = eps1;
    size_t diag = s.S.rows() < s.S.cols() ? s.S.rows() : s.S.cols();
    for (size_t i = 0; i < q; i++) {
        Int si = i < diag ? s.S.at(i, i) : Int(0);
        if (si == 1) {
            continue;  // trivial quotient factor
        }
        RatVec gen = canonicalize(g, e_iso.column(i));
        if (si == 0) {
            net.free_gens.push_back(std::move(gen));
        } else {
            net.compact_gens.push_back(std::move(gen));
            net.compact_orders.push_back(si);
        }
    }

    for (const Int &d : deltas) {
        if (d < 1) {
            throw std::invalid_argument("build_net: deltas must be positive");
        }
    }
    deltas.resize(net.free_gens.size(), Int(10));
    net.deltas = std::move(deltas);
    return net;
}

inline std::vector<RatVec> enumerate_net(const NetSpec &net) {
    std::vector<Int> lo, hi;  // coefficient ranges, inclusive lower / exclusive upper
    for (const Int &s : net.compact_orders) {
        lo.push_back(Int(0));
        hi.push_back(s);
    }
    for (const Int &d : net.deltas) {
        lo.push_back(-d);
        hi.push_back(d + 1);
    }
    std::vector<RatVec> out;
    IntVec coeff(lo.begin(), lo.end());
    while (true) {
        out.push_back(net.point(coeff));
        size_t pos = coeff.size();
        while (pos > 0) {
            pos--;
            coeff[pos]++;
            if (coeff[pos] < hi[pos]) {
                break;
            }
            coeff[pos] = lo[pos];
            if (pos == 0) {
                return out;
            }
        }
        if (coeff.empty()) {
            return out;
        }
    }
}

namespace detail {

// Uniform draw from [0, n) by rejection, free of modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_below: empty range");
    }
    std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    std::uint64_t limit = UINT64_MAX - rem;
    std::uint64_t r;
    do {
        r = rng();
    } while (r > limit);
    return r % n;
}

// Arbitrary-precision uniform draw from [0, n). Ranges that fit in 64 bits
// consume exactly one generator value per accepted draw via uniform_below;
// larger ranges assemble a bit-masked candidate from 64-bit words and reject
// until it falls below n (fewer than two attempts expected).
inline Int uniform_int_below(std::mt19937_64 &rng, const Int &n) {
    if (n < 1) {
        throw std::invalid_argument("uniform_int_below: empty range");
    }
    if (n <= Int(UINT64_MAX)) {
        return Int(uniform_below(rng, n.convert_to<std::uint64_t>()));
    }
    size_t bits = boost::multiprecision::msb(n) + 1;
    size_t words = (bits + 63) / 64;
    size_t top = bits - (words - 1) * 64;
    std::uint64_t mask =
        top == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << top) - std::uint64_t(1));
    for (;;) {
        Int r(0);
        for (size_t w = 0; w < words; w++) {
            std::uint64_t x = rng();
            if (w == 0) {
                x &= mask;
            }
            r = (r << 64) | Int(x);
        }
        if (r < n) {
            return r;
        }
    }
}

}  // namespace detail

// Draws uniformly random net points; the coefficient draws consume the
// generator in a fixed order (compact coefficients first, then free ones),
// so a seed determines the whole sample sequence.
//
// Construction rewrites offset and generators over one shared denominator so
// each draw costs integer dot products plus a single rational reduction per
// coordinate; the values agree exactly with NetSpec::point.
class NetSampler {
  public:
    NetSampler(NetSpec net, std::uint64_t seed) : net_(std::move(net)), rng_(seed) {
        size_t m = net_.group.size();
        size_t n = net_.coefficient_count();
        den_ = Int(1);
        auto fold = [&](const RatVec &v) {
            for (const Rat &r : v) {
                den_ = int_lcm(den_, den(r));
            }
        };
        fold(net_.offset);
        for (const RatVec &v : net_.compact_gens) {
            fold(v);
        }
        for (const RatVec &v : net_.free_gens) {
            fold(v);
        }
        basis_ = IntMat(m, n);
        auto fill = [&](const RatVec &v, size_t col) {
            for (size_t k = 0; k < m; k++) {
                basis_.at(k, col) = num(v[k]) * (den_ / den(v[k]));
            }
        };
        for (size_t i = 0; i < net_.compact_gens.size(); i++) {
            fill(net_.compact_gens[i], i);
        }
        for (size_t j = 0; j < net_.free_gens.size(); j++) {
            fill(net_.free_gens[j], net_.compact_gens.size() + j);
        }
        offset_num_.resize(m);
        for (size_t k = 0; k < m; k++) {
            offset_num_[k] = num(net_.offset[k]) * (den_ / den(net_.offset[k]));
        }
    }

    const NetSpec &net() const { return net_; }

    RatVec draw() {
        IntVec coeff;
        coeff.reserve(net_.coefficient_count());
        for (const Int &s : net_.compact_orders) {
            coeff.push_back(detail::uniform_int_below(rng_, s));
        }
        for (const Int &d : net_.deltas) {
            coeff.push_back(detail::uniform_int_below(rng_, 2 * d + 1) - d);
        }
        size_t m = net_.group.size();
        RatVec x(m);
        for (size_t k = 0; k < m; k++) {
            Int acc = offset_num_[k];
            for (size_t i = 0; i < coeff.size(); i++) {
                acc += coeff[i] * basis_.at(k, i);
            }
            x[k] = den_ == 1 ? Rat(acc) : Rat(acc, den_);
        }
        return canonicalize(net_.group, std::move(x));
    }

  private:
    NetSpec net_;
    std::mt19937_64 rng_;
    IntMat basis_;
    Int den_;
    IntVec offset_num_;
};

inline std::vector<RatVec> sample(const NetSpec &net, std::uint64_t seed, size_t count) {
    NetSampler s(net, seed);
    std::vector<RatVec> out;
    out.reserve(count);
    for (size_t i = 0; i < count; i++) {
        out.push_back(s.draw());
    }
    return out;
}

}  // namespace abelsim
