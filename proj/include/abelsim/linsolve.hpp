#pragma once

// Exact solvers for linear systems over elementary Abelian groups.
//
// The core primitive is a mixed real-integer system A x + B y = c with
// x integral and y real. Systems over a group G (find g in G with
// alpha(g) = b) reduce to mixed systems by lifting each factor to its
// covering group (Z for Z and Z_N, R for T and R) and adding one integer
// slack variable per codomain factor with nonzero characteristic.
//
// Solution sets are returned as a particular solution x0 plus a
// homomorphism E from a parameter group R^alpha x Z^beta whose image is the
// set of homogeneous solutions. Infeasibility is a value, not an exception.

#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/matrix.hpp"
#include "abelsim/snf.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace abelsim {

struct GeneralSolution {
    RatVec x0;    // one solution, canonical in E.codomain
    MatrixRep e;  // parameter map; solution set = x0 + im(e)
};

struct MixedSystem {
    RatMat a;  // coefficients of the integer variables
    RatMat b;  // coefficients of the real variables
    RatVec c;  // right-hand side

    MixedSystem(RatMat a_, RatMat b_, RatVec c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (a.rows() != b.rows() || a.rows() != c.size()) {
            throw std::invalid_argument("MixedSystem: row count mismatch");
        }
    }
};

namespace detail {

inline GroupSpec free_group(size_t num_r, size_t num_z) {
    std::vector<PrimitiveFactor> f;
    f.reserve(num_r + num_z);
    for (size_t i = 0; i < num_r; i++) {
        f.push_back(PrimitiveFactor::r());
    }
    for (size_t i = 0; i < num_z; i++) {
        f.push_back(PrimitiveFactor::z());
    }
    return GroupSpec(std::move(f));
}

}  // namespace detail

// Reorders the domain so R factors precede Z factors and drops columns that
// generate nothing. Does not change the image.
inline MatrixRep normalize_solution_domain(const MatrixRep &e) {
    std::vector<size_t> keep_r, keep_z;
    for (size_t j = 0; j < e.domain.size(); j++) {
        bool zero = true;
        for (size_t i = 0; i < e.codomain.size(); i++) {
            if (e.mat.at(i, j) != 0) {
                zero = false;
                break;
            }
        }
        if (zero) {
            continue;
        }
        if (e.domain.factors[j].kind == FactorKind::R) {
            keep_r.push_back(j);
        } else if (e.domain.factors[j].kind == FactorKind::Z) {
            keep_z.push_back(j);
        } else {
            throw std::invalid_argument("normalize_solution_domain: domain must be R^a x Z^b");
        }
    }
    RatMat m(e.codomain.size(), keep_r.size() + keep_z.size());
    size_t col = 0;
    for (size_t j : keep_r) {
        for (size_t i = 0; i < e.codomain.size(); i++) {
            m.at(i, col) = e.mat.at(i, j);
        }
        col++;
    }
    for (size_t j : keep_z) {
        for (size_t i = 0; i < e.codomain.size(); i++) {
            m.at(i, col) = e.mat.at(i, j);
        }
        col++;
    }
    return MatrixRep(detail::free_group(keep_r.size(), keep_z.size()), e.codomain, std::move(m));
}

// True when the represented homomorphism is the zero map. Continuous domain
// factors require an exactly zero column; discrete ones are tested on their
// generator.
inline bool is_zero_hom(const MatrixRep &rep) {
    for (size_t j = 0; j < rep.domain.size(); j++) {
        const PrimitiveFactor &f = rep.domain.factors[j];
        if (f.kind == FactorKind::R || f.kind == FactorKind::T) {
            for (size_t i = 0; i < rep.codomain.size(); i++) {
                if (rep.mat.at(i, j) != 0) {
                    return false;
                }
            }
        } else {
            RatVec gen(rep.domain.size(), Rat(0));
            gen[j] = 1;
            if (!is_zero(rep.apply(gen))) {
                return false;
            }
        }
    }
    return true;
}

inline std::optional<GeneralSolution> solve_mixed(const MixedSystem &sys) {
    const size_t n = sys.a.rows();
    const size_t p = sys.a.cols();
    const size_t q = sys.b.cols();

    // Stage 1: Gauss-Jordan elimination on the real block, tracking the row
    // transform so the same operations hit the integer block and the
    // right-hand side. Deterministic: first nonzero pivot, columns in order.
    RatMat work = sys.b;
    RatMat t = to_rational(IntMat::identity(n));
    std::vector<size_t> piv_cols;
    size_t r = 0;
    for (size_t j = 0; j < q && r < n; j++) {
        size_t piv = r;
        while (piv < n && work.at(piv, j) == 0) {
            piv++;
        }
        if (piv == n) {
            continue;
        }
        work.swap_rows(piv, r);
        t.swap_rows(piv, r);
        Rat inv = Rat(1) / work.at(r, j);
        work.scale_row(r, inv);
        t.scale_row(r, inv);
        for (size_t i = 0; i < n; i++) {
            if (i != r && work.at(i, j) != 0) {
                Rat f = -work.at(i, j);
                work.addmul_row(i, r, f);
                t.addmul_row(i, r, f);
            }
        }
        piv_cols.push_back(j);
        r++;
    }

    RatMat ta = t * sys.a;
    RatVec tc = t * sys.c;
    const size_t k = n - r;  // rows with no real variables left

    // Stage 2: the residual integer system A2 x = c2, made integral row by
    // row and solved through the Smith normal form.
    RatMat a2(k, p);
    RatVec c2(k);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < p; j++) {
            a2.at(i, j) = ta.at(r + i, j);
        }
        c2[i] = tc[r + i];
    }
    IntMat m(k, p);
    IntVec d(k);
    for (size_t i = 0; i < k; i++) {
        Int scale(1);
        for (size_t j = 0; j < p; j++) {
            scale = int_lcm(scale, den(a2.at(i, j)));
        }
        scale = int_lcm(scale, den(c2[i]));
        for (size_t j = 0; j < p; j++) {
            m.at(i, j) = num(a2.at(i, j) * Rat(scale));
        }
        d[i] = num(c2[i] * Rat(scale));
    }

    SnfResult s = snf(m);
    IntVec e(k, Int(0));
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            e[i] += s.Uinv.at(i, j) * d[j];
        }
    }
    size_t diag = std::min(k, p);
    IntVec z(p, Int(0));
    std::vector<size_t> free_pos;
    for (size_t j = 0; j < p; j++) {
        if (j >= diag || s.S.at(j, j) == 0) {
            free_pos.push_back(j);
        }
    }
    for (size_t i = 0; i < k; i++) {
        if (i < diag && s.S.at(i, i) != 0) {
            if (e[i] % s.S.at(i, i) != 0) {
                return std::nullopt;  // divisibility obstruction
            }
            z[i] = e[i] / s.S.at(i, i);
        } else if (e[i] != 0) {
            return std::nullopt;  // inconsistent zero row
        }
    }
    IntVec x0_int(p, Int(0));
    for (size_t i = 0; i < p; i++) {
        for (size_t j = 0; j < p; j++) {
            if (z[j] != 0) {
                x0_int[i] += s.Vinv.at(i, j) * z[j];
            }
        }
    }

    // Stage 3: back-substitute a particular real solution and assemble the
    // homogeneous generators: one real generator per non-pivot real column,
    // one integer generator per free integer direction.
    auto solve_real = [&](const RatVec &rhs_top) {
        RatVec y(q, Rat(0));
        for (size_t i = 0; i < r; i++) {
            y[piv_cols[i]] = rhs_top[i];
        }
        return y;
    };
    RatVec rhs0(r);
    for (size_t i = 0; i < r; i++) {
        rhs0[i] = tc[i];
        for (size_t j = 0; j < p; j++) {
            rhs0[i] -= ta.at(i, j) * Rat(x0_int[j]);
        }
    }
    RatVec y0 = solve_real(rhs0);

    std::vector<RatVec> gens_real;
    for (size_t j = 0; j < q; j++) {
        bool pivot = false;
        for (size_t i = 0; i < r; i++) {
            if (piv_cols[i] == j) {
                pivot = true;
                break;
            }
        }
        if (pivot) {
            continue;
        }
        RatVec g(p + q, Rat(0));
        g[p + j] = 1;
        for (size_t i = 0; i < r; i++) {
            g[p + piv_cols[i]] = -work.at(i, j);
        }
        gens_real.push_back(std::move(g));
    }
    std::vector<RatVec> gens_int;
    for (size_t f : free_pos) {
        RatVec g(p + q, Rat(0));
        RatVec kappa(p);
        for (size_t i = 0; i < p; i++) {
            kappa[i] = Rat(s.Vinv.at(i, f));
            g[i] = kappa[i];
        }
        RatVec rhs(r);
        for (size_t i = 0; i < r; i++) {
            rhs[i] = Rat(0);
            for (size_t j = 0; j < p; j++) {
                rhs[i] -= ta.at(i, j) * kappa[j];
            }
        }
        RatVec yk = solve_real(rhs);
        for (size_t j = 0; j < q; j++) {
            g[p + j] = yk[j];
        }
        gens_int.push_back(std::move(g));
    }

    GroupSpec vars = detail::free_group(0, p);
    for (size_t j = 0; j < q; j++) {
        vars.factors.push_back(PrimitiveFactor::r());
    }
    RatMat em(p + q, gens_real.size() + gens_int.size());
    size_t col = 0;
    for (const auto &g : gens_real) {
        for (size_t i = 0; i < p + q; i++) {
            em.at(i, col) = g[i];
        }
        col++;
    }
    for (const auto &g : gens_int) {
        for (size_t i = 0; i < p + q; i++) {
            em.at(i, col) = g[i];
        }
        col++;
    }
    GroupSpec dom = detail::free_group(gens_real.size(), gens_int.size());
    RatVec x0(p + q);
    for (size_t j = 0; j < p; j++) {
        x0[j] = Rat(x0_int[j]);
    }
    for (size_t j = 0; j < q; j++) {
        x0[p + j] = y0[j];
    }
    return GeneralSolution{std::move(x0), MatrixRep(dom, vars, std::move(em))};
}

// Solves alpha(g) = b over g in the domain of alpha.
inline std::optional<GeneralSolution> solve_group_system(const MatrixRep &alpha, RatVec b) {
    const GroupSpec &g = alpha.domain;
    const GroupSpec &h = alpha.codomain;
    b = canonicalize(h, std::move(b));
    const size_t n = h.size();

    std::vector<size_t> int_vars, real_vars;
    for (size_t j = 0; j < g.size(); j++) {
        if (g.factors[j].discrete()) {
            int_vars.push_back(j);
        } else {
            real_vars.push_back(j);
        }
    }
    std::vector<size_t> slack_rows;
    for (size_t i = 0; i < n; i++) {
        if (h.factors[i].characteristic() != 0) {
            slack_rows.push_back(i);
        }
    }

    RatMat ma(n, int_vars.size() + slack_rows.size());
    RatMat mb(n, real_vars.size());
    for (size_t i = 0; i < n; i++) {
        for (size_t jj = 0; jj < int_vars.size(); jj++) {
            ma.at(i, jj) = alpha.mat.at(i, int_vars[jj]);
        }
        for (size_t jj = 0; jj < real_vars.size(); jj++) {
            mb.at(i, jj) = alpha.mat.at(i, real_vars[jj]);
        }
    }
    for (size_t ss = 0; ss < slack_rows.size(); ss++) {
        ma.at(slack_rows[ss], int_vars.size() + ss) = h.factors[slack_rows[ss]].characteristic();
    }

    auto mixed = solve_mixed(MixedSystem(std::move(ma), std::move(mb), b));
    if (!mixed) {
        return std::nullopt;
    }

    // Project the mixed solution back onto the group coordinates, dropping
    // the slack variables.
    RatVec x0(g.size(), Rat(0));
    for (size_t jj = 0; jj < int_vars.size(); jj++) {
        x0[int_vars[jj]] = mixed->x0[jj];
    }
    for (size_t jj = 0; jj < real_vars.size(); jj++) {
        x0[real_vars[jj]] = mixed->x0[int_vars.size() + slack_rows.size() + jj];
    }
    x0 = canonicalize(g, std::move(x0));

    const MatrixRep &me = mixed->e;
    RatMat proj(g.size(), me.domain.size());
    for (size_t jj = 0; jj < int_vars.size(); jj++) {
        for (size_t c2 = 0; c2 < me.domain.size(); c2++) {
            proj.at(int_vars[jj], c2) = me.mat.at(jj, c2);
        }
    }
    for (size_t jj = 0; jj < real_vars.size(); jj++) {
        for (size_t c2 = 0; c2 < me.domain.size(); c2++) {
            proj.at(real_vars[jj], c2) = me.mat.at(int_vars.size() + slack_rows.size() + jj, c2);
        }
    }
    MatrixRep e = normalize_solution_domain(MatrixRep(me.domain, g, std::move(proj)));
    return GeneralSolution{std::move(x0), std::move(e)};
}

// Parameter map for the kernel of alpha: a homomorphism E with
// im(E) = ker(alpha). The particular solution of the zero system is zero.
inline MatrixRep kernel(const MatrixRep &alpha) {
    auto sol = solve_group_system(alpha, RatVec(alpha.codomain.size(), Rat(0)));
    if (!sol) {
        throw std::logic_error("kernel: homogeneous system reported infeasible");
    }
    return sol->e;
}

// Inverse of an automorphism alpha: G -> G, or nullopt when alpha is not an
// automorphism. Tries the rational matrix inverse first; when that is not a
// valid representation, falls back to solving one column system per factor
// over the group of admissible columns.
inline std::optional<MatrixRep> invert_automorphism(const MatrixRep &alpha) {
    const GroupSpec &g = alpha.domain;
    if (alpha.codomain != g) {
        throw std::invalid_argument("invert_automorphism: not an endomorphism");
    }
    const size_t m = g.size();

    auto verify = [&](const MatrixRep &candidate) {
        if (!is_valid(candidate)) {
            return false;
        }
        RatMat lhs = alpha.mat * candidate.mat - to_rational(IntMat::identity(m));
        RatMat rhs = candidate.mat * alpha.mat - to_rational(IntMat::identity(m));
        return is_zero_hom(MatrixRep(g, g, lhs)) && is_zero_hom(MatrixRep(g, g, rhs));
    };

    // Fast path: the literal matrix inverse, when it exists and is valid.
    {
        RatMat work = alpha.mat;
        RatMat inv = to_rational(IntMat::identity(m));
        bool singular = false;
        for (size_t t = 0; t < m && !singular; t++) {
            size_t piv = t;
            while (piv < m && work.at(piv, t) == 0) {
                piv++;
            }
            if (piv == m) {
                singular = true;
                break;
            }
            work.swap_rows(piv, t);
            inv.swap_rows(piv, t);
            Rat sc = Rat(1) / work.at(t, t);
            work.scale_row(t, sc);
            inv.scale_row(t, sc);
            for (size_t i = 0; i < m; i++) {
                if (i != t && work.at(i, t) != 0) {
                    Rat f = -work.at(i, t);
                    work.addmul_row(i, t, f);
                    inv.addmul_row(i, t, f);
                }
            }
        }
        if (!singular) {
            MatrixRep candidate(g, g, inv);
            if (verify(candidate)) {
                return candidate;
            }
        }
    }

    // Column systems: for column j, admissible columns form a group W_j * Y
    // with Y free; solve alpha(W_j y) = e_j in the appropriate quotient.
    GroupSpec reals;
    for (size_t i = 0; i < m; i++) {
        reals.factors.push_back(PrimitiveFactor::r());
    }
    RatMat x(m, m);
    for (size_t j = 0; j < m; j++) {
        const PrimitiveFactor &fj = g.factors[j];
        std::vector<std::pair<size_t, Rat>> lattice;  // (row, scale)
        bool integral_params = true;
        bool exact_codomain = false;
        switch (fj.kind) {
            case FactorKind::Z:
                for (size_t i = 0; i < m; i++) {
                    lattice.push_back({i, Rat(1)});
                }
                break;
            case FactorKind::ZN:
                for (size_t i = 0; i < m; i++) {
                    const PrimitiveFactor &fi = g.factors[i];
                    if (fi.kind == FactorKind::ZN) {
                        Int eta = fi.modulus / int_gcd(fi.modulus, fj.modulus);
                        lattice.push_back({i, Rat(eta)});
                    } else if (fi.kind == FactorKind::T) {
                        lattice.push_back({i, Rat(1, fj.modulus)});
                    }
                }
                break;
            case FactorKind::R:
                integral_params = false;
                exact_codomain = true;
                for (size_t i = 0; i < m; i++) {
                    if (g.factors[i].kind == FactorKind::R ||
                        g.factors[i].kind == FactorKind::T) {
                        lattice.push_back({i, Rat(1)});
                    }
                }
                break;
            case FactorKind::T:
                exact_codomain = true;
                for (size_t i = 0; i < m; i++) {
                    if (g.factors[i].kind == FactorKind::T) {
                        lattice.push_back({i, Rat(1)});
                    }
                }
                break;
        }
        RatMat w(m, lattice.size());
        for (size_t c2 = 0; c2 < lattice.size(); c2++) {
            w.at(lattice[c2].first, c2) = lattice[c2].second;
        }
        GroupSpec dom = detail::free_group(integral_params ? 0 : lattice.size(),
                                           integral_params ? lattice.size() : 0);
        const GroupSpec &cod = exact_codomain ? reals : g;
        RatVec ej(m, Rat(0));
        ej[j] = 1;
        auto sol = solve_group_system(MatrixRep(dom, cod, alpha.mat * w), ej);
        if (!sol) {
            return std::nullopt;
        }
        RatVec xj = w * sol->x0;
        for (size_t i = 0; i < m; i++) {
            x.at(i, j) = xj[i];
        }
    }
    MatrixRep candidate(g, g, std::move(x));
    if (!verify(candidate)) {
        return std::nullopt;
    }
    return candidate;
}

}  // namespace abelsim
