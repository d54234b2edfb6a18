#pragma once

// The arithmetic exponential exp_delta(x) = unghost(x, phi x, phi^2 x, ...),
// its residue version (the arithmetic Taylor expansion), the explicit P_n
// recursion used as an independent oracle, the L_ij / S_i term decomposition
// with valuations, and brute-force enumeration of constants.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/poly.hpp"
#include "wittlab/witt.hpp"

namespace wittlab {

// An algebra together with a validated Frobenius lift.
struct DeltaContext {
    DeltaContext(AlgPtr alg_in, FrobLift phi_in)
        : alg(std::move(alg_in)), phi(std::move(phi_in)) {
        check_same_alg(alg, phi.alg());
        validate_frob_lift(phi);
    }

    // Convenience for A = B (m = 0) or the default phi(u_i) = u_i^q.
    static DeltaContext standard(AlgPtr alg) {
        std::vector<Poly> images;
        for (std::size_t i = 0; i < alg->m(); ++i)
            images.push_back(Poly::generator(alg, i).pow(alg->base().q()));
        FrobLift phi(alg, std::move(images));
        return DeltaContext(alg, std::move(phi));
    }

    Poly apply_phi(const Poly& f) const { return apply_hom(phi, f); }
    Poly delta(const Poly& f) const { return delta_apply(phi, f); }

    AlgPtr alg;
    FrobLift phi;
};

// ---------------------------------------------------------------------------

// exp_delta(x) = (P_0(x), ..., P_n(x)), the unghost of (x, phi x, ..., phi^n x).
inline WittVec exp_delta(const DeltaContext& ctx, const Poly& x, std::size_t n) {
    check_same_alg(ctx.alg, x.alg());
    std::vector<Poly> w;
    w.reserve(n + 1);
    Poly cur = x;
    w.push_back(cur);
    for (std::size_t i = 1; i <= n; ++i) {
        cur = ctx.apply_phi(cur);
        w.push_back(cur);
    }
    return unghost(GhostVec{ctx.alg, std::move(w)});
}

// Componentwise residue of exp_delta: the arithmetic Taylor expansion of x
// centered at (pi).
inline ResidueWittVec taylor_expand(const DeltaContext& ctx, const Poly& x, std::size_t n) {
    return to_residue(exp_delta(ctx, x, n));
}

inline bool is_constant(const DeltaContext& ctx, const Poly& x) {
    return ctx.delta(x).is_zero();
}

// ---------------------------------------------------------------------------
// Explicit recursion. For n >= 1,
//
//   P_n(x) = sum_{i=0}^{n-1} sum_{j=1}^{q^{n-1-i}}
//            pi^{i+j-n} binom(q^{n-1-i}, j) P_i(x)^{q (q^{n-1-i}-j)} (delta P_i(x))^j
//
// computed without reference to the ghost route. Negative pi-powers are
// resolved per term by one exact division of the assembled numerator.

namespace detail {

// binom(q^l, j) * P^{q(q^l - j)} * (dP)^j, then times pi^{i+j-n} (dividing
// exactly when the exponent is negative).
inline Poly lij_term(const CoeffRing& B, std::size_t n, std::size_t i, std::uint64_t j,
                     std::uint64_t ql, const Poly& P, const Poly& dP) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(ql),
                 static_cast<unsigned long>(j));
    BElem c = B.from_int(binom);
    if (B.is_zero(c)) return Poly::zero(P.alg());
    Poly term = P.pow(B.q() * (ql - j)) * dP.pow(j);
    term = term.scalar_mul(c);
    std::int64_t expo = static_cast<std::int64_t>(i) + static_cast<std::int64_t>(j) -
                        static_cast<std::int64_t>(n);
    if (expo >= 0) {
        BElem pk = B.one();
        for (std::int64_t s = 0; s < expo; ++s) pk = B.mul(pk, B.pi());
        return term.scalar_mul(pk);
    }
    try {
        return exact_div_pi(term, static_cast<std::uint32_t>(-expo));
    } catch (const NotDivisible&) {
        throw InternalError("term (i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                            ") of the explicit recursion is not pi-integral; "
                            "numerator = " + format_poly(term));
    }
}

// P_0..P_n and delta P_0..delta P_{n-1}, all via the explicit recursion only.
inline std::pair<std::vector<Poly>, std::vector<Poly>> explicit_chain(
    const DeltaContext& ctx, const Poly& x, std::size_t n) {
    const CoeffRing& B = ctx.alg->base();
    std::vector<Poly> P{x}, dP;
    for (std::size_t k = 1; k <= n; ++k) {
        dP.push_back(ctx.delta(P[k - 1]));
        Poly acc = Poly::zero(ctx.alg);
        for (std::size_t i = 0; i < k; ++i) {
            std::uint64_t ql = 1;
            for (std::size_t s = 0; s < k - 1 - i; ++s) ql *= B.q();
            for (std::uint64_t j = 1; j <= ql; ++j)
                acc = acc + lij_term(B, k, i, j, ql, P[i], dP[i]);
        }
        P.push_back(std::move(acc));
    }
    return {std::move(P), std::move(dP)};
}

}  // namespace detail

inline Poly p_n_explicit(const DeltaContext& ctx, const Poly& x, std::size_t n) {
    check_same_alg(ctx.alg, x.alg());
    if (n == 0) return x;
    return detail::explicit_chain(ctx, x, n).first[n];
}

// ---------------------------------------------------------------------------
// Term decomposition of P_n(x): every L_ij with its valuation, the row sums
// S_i = sum_j L_ij, and the total sum_i S_i (which equals P_n(x)).

struct TermEntry {
    std::size_t i = 0;
    std::uint64_t j = 0;
    Poly L;
    Valuation v;
};

struct SumEntry {
    std::size_t i = 0;
    Poly S;
    Valuation v;
};

struct TermTable {
    std::size_t n = 0;
    std::vector<TermEntry> entries;  // (i, j) ascending
    std::vector<SumEntry> sums;      // i ascending
    Poly total;                      // = P_n(x)
};

inline TermTable term_decomposition(const DeltaContext& ctx, const Poly& x, std::size_t n) {
    check_same_alg(ctx.alg, x.alg());
    if (n == 0) throw DomainError("term_decomposition needs n >= 1");
    const CoeffRing& B = ctx.alg->base();
    auto [P, dP] = detail::explicit_chain(ctx, x, n - 1);
    dP.push_back(ctx.delta(P[n - 1]));

    TermTable table;
    table.n = n;
    table.total = Poly::zero(ctx.alg);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t ql = 1;
        for (std::size_t s = 0; s < n - 1 - i; ++s) ql *= B.q();
        Poly S = Poly::zero(ctx.alg);
        for (std::uint64_t j = 1; j <= ql; ++j) {
            Poly L = detail::lij_term(B, n, i, j, ql, P[i], dP[i]);
            S = S + L;
            table.entries.push_back({i, j, L, v_pi(L)});
        }
        table.total = table.total + S;
        table.sums.push_back({i, std::move(S), Valuation::inf()});
        table.sums.back().v = v_pi(table.sums.back().S);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of constants { x : delta x = 0 } within degree
// bounds; equal characteristic only (the coefficient space must be finite).

struct DegreeBounds {
    std::uint32_t gen_degree = 0;  // total degree bound in the generators
    std::uint32_t t_degree = 0;    // t-degree bound per coefficient
};

namespace detail {

inline void collect_monomials(std::size_t m, std::uint32_t bound, Monomial& cur,
                              std::size_t pos, std::uint32_t used,
                              std::vector<Monomial>& out) {
    if (pos == m) {
        out.push_back(cur);
        return;
    }
    for (std::uint32_t e = 0; used + e <= bound; ++e) {
        cur[pos] = e;
        collect_monomials(m, bound, cur, pos + 1, used + e, out);
    }
}

}  // namespace detail

inline std::vector<Poly> enumerate_constants(const DeltaContext& ctx, DegreeBounds bounds,
                                             std::uint64_t budget = (1u << 20)) {
    const CoeffRing& B = ctx.alg->base();
    if (B.kind() != RingKind::EqualChar)
        throw IncompatibleRing("enumerate_constants requires an EqualChar base");

    std::vector<Monomial> monos;
    Monomial cur(ctx.alg->m(), 0);
    detail::collect_monomials(ctx.alg->m(), bounds.gen_degree, cur, 0, 0, monos);

    std::size_t slots = monos.size() * (bounds.t_degree + 1);
    double bits = static_cast<double>(slots) * std::log2(static_cast<double>(B.q()));
    std::uint64_t count = 0;
    if (bits > 63) {
        throw BudgetExceeded(~std::uint64_t{0},
                             "enumeration space exceeds 2^63 candidates");
    }
    count = 1;
    for (std::size_t s = 0; s < slots; ++s) count *= B.q();
    if (count > budget)
        throw BudgetExceeded(count, "enumeration of " + std::to_string(count) +
                                        " candidates exceeds budget of " +
                                        std::to_string(budget));

    // Odometer over F_q digits, one per (monomial, t-power) slot.
    std::vector<std::uint64_t> digit(slots, 0);
    std::vector<Poly> found;
    for (std::uint64_t trial = 0; trial < count; ++trial) {
        Poly::TermMap terms;
        for (std::size_t mi = 0; mi < monos.size(); ++mi) {
            TPoly coeff;
            for (std::uint32_t d = 0; d <= bounds.t_degree; ++d)
                coeff.c.push_back(digit[mi * (bounds.t_degree + 1) + d]);
            while (!coeff.c.empty() && coeff.c.back() == 0) coeff.c.pop_back();
            if (!coeff.c.empty()) terms.emplace(monos[mi], BElem(std::move(coeff)));
        }
        Poly candidate(ctx.alg, std::move(terms));
        if (ctx.delta(candidate).is_zero()) found.push_back(std::move(candidate));
        for (std::size_t s = 0; s < slots; ++s) {
            if (++digit[s] < B.q()) break;
            digit[s] = 0;
        }
    }
    return found;
}

}  // namespace wittlab
