#pragma once

// Seeded, budgeted property-test suites. Each suite checks one lemma,
// proposition, or theorem over a configured ring at finite truncation and
// reports failures with replayable witnesses. Every trial derives its own
// generator from (seed, suite name, ring name, trial index), so suites are
// independent and reports are deterministic.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/config.hpp"
#include "wittlab/delta.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/poly.hpp"
#include "wittlab/rng.hpp"
#include "wittlab/witt.hpp"

namespace wittlab {

// ---------------------------------------------------------------------------

struct SampleBounds {
    std::uint32_t gen_degree = 3;    // per-generator exponent bound
    std::uint32_t coeff_degree = 3;  // t-degree of sampled coefficients (EqualChar)
    std::uint32_t coeff_mag = 9;     // |integer part| bound (mixed characteristic)
    std::uint32_t max_terms = 3;     // sampled terms per polynomial
};

struct RingSpec {
    std::string name;
    CoeffRing ring;
    AlgPtr alg;
    FrobLift phi;
    std::size_t n_max = 4;
    SampleBounds bounds;
};

struct SuiteConfig {
    std::string suite;
    RingSpec ring;
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;  // 0 = per-suite default
};

struct Failure {
    std::string inputs;
    std::string expected;
    std::string actual;
};

struct VerifyReport {
    std::string suite;
    std::string ring;
    bool skipped = false;
    std::string skip_reason;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;  // trials actually run
    std::uint64_t passes = 0;
    std::vector<Failure> failures;
    double wall_ms = 0.0;

    bool pass() const { return skipped || failures.empty(); }
    std::string status() const { return skipped ? "SKIPPED" : (pass() ? "PASS" : "FAIL"); }
};

// ---------------------------------------------------------------------------
// Deterministic sampling.

inline BElem sample_b(const CoeffRing& B, Rng& rng, const SampleBounds& bounds) {
    switch (B.kind()) {
        case RingKind::EqualChar: {
            TPoly c;
            std::uint64_t deg = rng.below(bounds.coeff_degree + 1);
            for (std::uint64_t k = 0; k <= deg; ++k) c.c.push_back(rng.below(B.q()));
            while (!c.c.empty() && c.c.back() == 0) c.c.pop_back();
            return BElem(std::move(c));
        }
        case RingKind::MixedChar:
            return BElem(mpz_class(rng.range(-static_cast<std::int64_t>(bounds.coeff_mag),
                                             bounds.coeff_mag)));
        case RingKind::MixedCharRamified: {
            std::int64_t lo = -static_cast<std::int64_t>(bounds.coeff_mag);
            std::int64_t hi = bounds.coeff_mag;
            return BElem(GaussInt{mpz_class(rng.range(lo, hi)), mpz_class(rng.range(lo, hi))});
        }
    }
    throw DomainError("bad kind");
}

// Sparse nonzero polynomial within the bounds.
inline Poly sample_poly(const AlgPtr& alg, Rng& rng, const SampleBounds& bounds) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Poly f = Poly::zero(alg);
        std::uint64_t nterms = 1 + rng.below(bounds.max_terms);
        for (std::uint64_t k = 0; k < nterms; ++k) {
            Monomial e(alg->m());
            for (auto& ei : e)
                ei = static_cast<std::uint32_t>(rng.below(bounds.gen_degree + 1));
            f = f + Poly::monomial(alg, std::move(e), sample_b(alg->base(), rng, bounds));
        }
        if (!f.is_zero()) return f;
    }
    return Poly::one(alg);
}

// Nonzero polynomial with content valuation exactly 0.
inline Poly sample_unit_poly(const AlgPtr& alg, Rng& rng, const SampleBounds& bounds) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Poly f = sample_poly(alg, rng, bounds);
        Valuation v = v_pi(f);
        if (!v.infinite && v.v == 0) return f;
    }
    // 1 + pi*f always has content valuation 0
    return Poly::one(alg) + sample_poly(alg, rng, bounds).times_pi();
}

// Nonzero polynomial with content valuation exactly m.
inline Poly sample_with_val(const AlgPtr& alg, Rng& rng, const SampleBounds& bounds,
                            std::uint32_t m) {
    Poly f = sample_unit_poly(alg, rng, bounds);
    const CoeffRing& B = alg->base();
    BElem pim = B.one();
    for (std::uint32_t s = 0; s < m; ++s) pim = B.mul(pim, B.pi());
    return f.scalar_mul(pim);
}

inline WittVec sample_witt(const AlgPtr& alg, Rng& rng, const SampleBounds& bounds,
                           std::size_t n) {
    WittVec x{alg, {}};
    for (std::size_t i = 0; i <= n; ++i) x.comps.push_back(sample_poly(alg, rng, bounds));
    return x;
}

// ---------------------------------------------------------------------------
// Suite registry.

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "ghost_hom",     "frobenius_diagram", "universal_poly_oracle",
        "lift_independence", "teichmuller",   "delta_axioms",
        "lemma_one",     "explicit_recursion", "lij_valuations",
        "thm_val",       "modinj",            "topology",
        "allzero",       "modpip",            "sadhu_finite",
        "constants_descent", "exp_hom",
    };
    return names;
}

inline bool suite_requires_equal_char(const std::string& suite) {
    return suite == "modpip" || suite == "sadhu_finite" || suite == "constants_descent";
}

inline bool suite_known(const std::string& suite) {
    for (const auto& s : suite_names())
        if (s == suite) return true;
    return false;
}

namespace detail {

struct SuiteEnv {
    const RingSpec& spec;
    DeltaContext ctx;
    bool standard_phi;  // true when phi(u_i) = u_i^q for every generator
};

inline bool is_standard_phi(const RingSpec& spec) {
    for (std::size_t i = 0; i < spec.alg->m(); ++i)
        if (spec.phi.images()[i] != Poly::generator(spec.alg, i).pow(spec.ring.q()))
            return false;
    return true;
}

inline std::optional<Failure> fail(std::string inputs, std::string expected,
                                   std::string actual) {
    return Failure{std::move(inputs), std::move(expected), std::move(actual)};
}

// A known element of A^delta. With the standard lift, any polynomial with
// F_q coefficients (equal characteristic) or any monomial with coefficient
// in {0, 1, -1 if q odd} (mixed) is constant; otherwise only the images of
// F_q scalars under the section are guaranteed.
inline Poly sample_constant(const SuiteEnv& env, Rng& rng) {
    const AlgPtr& alg = env.spec.alg;
    const CoeffRing& B = alg->base();
    if (!env.standard_phi || alg->m() == 0)
        return Poly::constant(alg, B.section(FqElem{rng.below(B.q())}));
    if (B.kind() == RingKind::EqualChar) {
        Poly f = Poly::zero(alg);
        std::uint64_t nterms = rng.below(env.spec.bounds.max_terms + 1);
        for (std::uint64_t k = 0; k < nterms; ++k) {
            Monomial e(alg->m());
            for (auto& ei : e)
                ei = static_cast<std::uint32_t>(rng.below(env.spec.bounds.gen_degree + 1));
            f = f + Poly::monomial(alg, std::move(e), B.section(FqElem{rng.below(B.q())}));
        }
        return f;
    }
    Monomial e(alg->m());
    for (auto& ei : e)
        ei = static_cast<std::uint32_t>(rng.below(env.spec.bounds.gen_degree + 1));
    std::uint64_t pick = rng.below(B.q() % 2 == 1 ? 3 : 2);
    BElem c = pick == 0 ? B.one() : pick == 1 ? B.zero() : B.neg(B.one());
    if (pick == 1) return Poly::one(alg);  // avoid the zero monomial; 1 is constant
    return Poly::monomial(alg, std::move(e), std::move(c));
}

// Frobenius lift phi(u_1) = u_1^q + pi^(m+1) g used to manufacture modpiP
// hypotheses v(x) = 0, v(delta x) = m.
inline DeltaContext manufactured_ctx(const RingSpec& spec, std::uint32_t m, const Poly& g) {
    const CoeffRing& B = spec.ring;
    BElem pim = B.one();
    for (std::uint32_t s = 0; s < m + 1; ++s) pim = B.mul(pim, B.pi());
    std::vector<Poly> images;
    images.push_back(Poly::generator(spec.alg, 0).pow(B.q()) + g.scalar_mul(pim));
    for (std::size_t i = 1; i < spec.alg->m(); ++i)
        images.push_back(Poly::generator(spec.alg, i).pow(B.q()));
    return DeltaContext(spec.alg, FrobLift(spec.alg, std::move(images)));
}

// ---- individual suites ----------------------------------------------------

inline std::optional<Failure> trial_ghost_hom(const SuiteEnv& env, Rng& rng,
                                              std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % s.n_max;
    WittVec x = sample_witt(s.alg, rng, s.bounds, n);
    WittVec y = sample_witt(s.alg, rng, s.bounds, n);
    std::string in = "n=" + std::to_string(n) + "; x=" + format_witt(x) +
                     "; y=" + format_witt(y);
    for (BOp op : {BOp::Add, BOp::Mul}) {
        GhostVec lhs = ghost(witt_arith(x, y, op));
        GhostVec rhs = ghost_arith(ghost(x), ghost(y), op);
        if (lhs != rhs)
            return fail(in + (op == BOp::Add ? "; op=add" : "; op=mul"),
                        format_ghost(rhs), format_ghost(lhs));
    }
    WittVec back = unghost(ghost(x));
    if (back != x) return fail(in + "; op=roundtrip", format_witt(x), format_witt(back));
    return std::nullopt;
}

inline std::optional<Failure> trial_frobenius_diagram(const SuiteEnv& env, Rng& rng,
                                                      std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % s.n_max;
    WittVec x = sample_witt(s.alg, rng, s.bounds, n);
    std::string in = "n=" + std::to_string(n) + "; x=" + format_witt(x);
    GhostVec lhs = ghost(frobenius_F(x));
    GhostVec rhs = shift_Fw(ghost(x));
    if (lhs != rhs) return fail(in, format_ghost(rhs), format_ghost(lhs));
    if (n >= 2) {
        WittVec tf = restrict_T(frobenius_F(x));
        WittVec ft = frobenius_F(restrict_T(x));
        if (tf != ft) return fail(in + "; check=T.F=F.T", format_witt(ft), format_witt(tf));
    }
    return std::nullopt;
}

inline std::optional<Failure> trial_universal(
    const SuiteEnv& env, Rng& rng, std::uint64_t t,
    std::map<std::pair<std::size_t, int>, std::vector<Poly>>& cache) {
    const RingSpec& s = env.spec;
    std::size_t cap = s.ring.q() == 2 ? 3 : 2;
    std::size_t n = 1 + t % std::min(s.n_max, cap);
    BOp op = (t % 2 == 0) ? BOp::Add : BOp::Mul;
    auto key = std::make_pair(n, op == BOp::Add ? 0 : 1);
    if (!cache.count(key)) cache[key] = universal_polys(s.ring, n, op, 4);
    const auto& U = cache[key];
    WittVec x = sample_witt(s.alg, rng, s.bounds, n);
    WittVec y = sample_witt(s.alg, rng, s.bounds, n);
    std::vector<Poly> args = x.comps;
    args.insert(args.end(), y.comps.begin(), y.comps.end());
    WittVec direct = witt_arith(x, y, op);
    for (std::size_t k = 0; k <= n; ++k) {
        Poly via = eval_universal(U[k], args);
        if (via != direct.comps[k])
            return fail("n=" + std::to_string(n) + "; op=" +
                            (op == BOp::Add ? std::string("add") : std::string("mul")) +
                            "; x=" + format_witt(x) + "; y=" + format_witt(y) +
                            "; k=" + std::to_string(k),
                        format_poly(direct.comps[k]), format_poly(via));
    }
    return std::nullopt;
}

inline std::optional<Failure> trial_lift_independence(const SuiteEnv& env, Rng& rng,
                                                      std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % s.n_max;
    ResidueWittVec xr = to_residue(sample_witt(s.alg, rng, s.bounds, n));
    ResidueWittVec yr = to_residue(sample_witt(s.alg, rng, s.bounds, n));
    BOp op = (t % 2 == 0) ? BOp::Add : BOp::Mul;
    ResidueWittVec r1 = residue_witt_arith(xr, yr, op);
    auto perturb = [&](const ResidueWittVec& v) {
        WittVec w = lift(v);
        for (auto& comp : w.comps) comp = comp + sample_poly(s.alg, rng, s.bounds).times_pi();
        return w;
    };
    ResidueWittVec r2 = to_residue(witt_arith(perturb(xr), perturb(yr), op));
    if (r1 != r2)
        return fail("n=" + std::to_string(n) + "; op=" +
                        (op == BOp::Add ? std::string("add") : std::string("mul")) +
                        "; x=" + format_residue_witt(xr) + "; y=" + format_residue_witt(yr),
                    format_residue_witt(r1), format_residue_witt(r2));
    return std::nullopt;
}

inline std::optional<Failure> trial_teichmuller(const SuiteEnv& env, Rng& rng,
                                                std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % s.n_max;
    Poly a = sample_poly(s.alg, rng, s.bounds);
    Poly b = sample_poly(s.alg, rng, s.bounds);
    std::string in = "n=" + std::to_string(n) + "; a=" + format_poly(a) +
                     "; b=" + format_poly(b);
    WittVec prod = witt_arith(teichmuller(a, n), teichmuller(b, n), BOp::Mul);
    if (prod != teichmuller(a * b, n))
        return fail(in + "; check=multiplicative", format_witt(teichmuller(a * b, n)),
                    format_witt(prod));
    WittVec sum = witt_arith(teichmuller(a, n), teichmuller(b, n), BOp::Add);
    if (s.ring.kind() == RingKind::EqualChar) {
        if (sum != teichmuller(a + b, n))
            return fail(in + "; check=additive", format_witt(teichmuller(a + b, n)),
                        format_witt(sum));
    } else {
        WittVec one1 = teichmuller(Poly::one(s.alg), 1);
        WittVec two = witt_arith(one1, one1, BOp::Add);
        if (two == teichmuller(Poly::from_int(s.alg, 2), 1))
            return fail("a=1; b=1; check=non-additive",
                        "theta(1) + theta(1) != theta(2) in mixed characteristic",
                        format_witt(two));
    }
    return std::nullopt;
}

inline std::optional<Failure> trial_delta_axioms(const SuiteEnv& env, Rng& rng,
                                                 std::uint64_t) {
    const RingSpec& s = env.spec;
    const CoeffRing& B = s.ring;
    Poly f = sample_poly(s.alg, rng, s.bounds);
    Poly g = sample_poly(s.alg, rng, s.bounds);
    std::string in = "f=" + format_poly(f) + "; g=" + format_poly(g);
    Poly df = env.ctx.delta(f), dg = env.ctx.delta(g);
    Poly lhs_add = env.ctx.delta(f + g);
    Poly rhs_add = df + dg + c_pi(f, g);
    if (lhs_add != rhs_add)
        return fail(in + "; axiom=additivity", format_poly(rhs_add), format_poly(lhs_add));
    Poly lhs_mul = env.ctx.delta(f * g);
    Poly rhs_mul = f.pow(B.q()) * dg + g.pow(B.q()) * df + (df * dg).times_pi();
    if (lhs_mul != rhs_mul)
        return fail(in + "; axiom=Leibniz", format_poly(rhs_mul), format_poly(lhs_mul));
    // base-ring delta agrees with delta on constant polynomials
    BElem a = sample_b(B, rng, s.bounds);
    Poly via_poly = env.ctx.delta(Poly::constant(s.alg, a));
    Poly via_base = Poly::constant(s.alg, B.delta(a));
    if (via_poly != via_base)
        return fail("a=" + wittlab::format_b(B, a) + "; check=delta_B", format_poly(via_base),
                    format_poly(via_poly));
    return std::nullopt;
}

inline std::optional<Failure> trial_lemma_one(const SuiteEnv& env, Rng& rng,
                                              std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::uint32_t m = 1 + static_cast<std::uint32_t>(t % 3);
    Poly f = sample_with_val(s.alg, rng, s.bounds, m);
    Valuation vd = v_pi(env.ctx.delta(f));
    if (vd.infinite || vd.v != static_cast<std::int64_t>(m) - 1)
        return fail("m=" + std::to_string(m) + "; f=" + format_poly(f),
                    "v(delta f) = " + std::to_string(m - 1), "v(delta f) = " + vd.str());
    return std::nullopt;
}

inline std::optional<Failure> trial_explicit_recursion(const SuiteEnv& env, Rng& rng,
                                                       std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % s.n_max;
    Poly x = sample_poly(s.alg, rng, s.bounds);
    Poly via_ghost = exp_delta(env.ctx, x, n).comps[n];
    Poly via_recursion = p_n_explicit(env.ctx, x, n);
    if (via_ghost != via_recursion)
        return fail("n=" + std::to_string(n) + "; x=" + format_poly(x),
                    format_poly(via_ghost), format_poly(via_recursion));
    return std::nullopt;
}

inline std::optional<Failure> trial_lij_valuations(const SuiteEnv& env, Rng& rng,
                                                   std::uint64_t t) {
    const RingSpec& s = env.spec;
    const CoeffRing& B = s.ring;
    std::size_t n = 1 + t % s.n_max;
    std::uint32_t m = static_cast<std::uint32_t>(n + t % 2);  // hypothesis: m >= n
    Poly x = sample_with_val(s.alg, rng, s.bounds, m);
    std::string in = "n=" + std::to_string(n) + "; m=" + std::to_string(m) +
                     "; x=" + format_poly(x);

    // Guard: the lemmas assume v(P_i(x)) = m - i for i < n (Thm val territory).
    WittVec E = exp_delta(env.ctx, x, n);
    for (std::size_t i = 0; i < n; ++i) {
        Valuation vi = v_pi(E.comps[i]);
        if (vi.infinite || vi.v != static_cast<std::int64_t>(m - i))
            return fail(in + "; guard=v(P_" + std::to_string(i) + ")",
                        std::to_string(m - i), vi.str());
    }

    TermTable table = term_decomposition(env.ctx, x, n);
    std::int64_t e = B.e(), h = B.h(), q = static_cast<std::int64_t>(B.q());
    for (const auto& entry : table.entries) {
        std::int64_t i = static_cast<std::int64_t>(entry.i);
        std::int64_t j = static_cast<std::int64_t>(entry.j);
        std::int64_t l = static_cast<std::int64_t>(n) - 1 - i;
        std::int64_t ql = 1;
        for (std::int64_t sbm = 0; sbm < l; ++sbm) ql *= q;
        if (B.kind() == RingKind::EqualChar) {
            // the binomial kills every term except j = q^l
            if (j < ql && !entry.L.is_zero())
                return fail(in + "; L(" + std::to_string(i) + "," + std::to_string(j) + ")",
                            "0", format_poly(entry.L));
            continue;
        }
        std::int64_t qni = ql * q;  // q^(n-i)
        Valuation vj = B.v_pi(B.from_int(j));
        std::int64_t predicted = i - static_cast<std::int64_t>(n) + l * e * h +
                                 (m - i) * qni - (m - i) * (q - 1) * j - vj.v;
        if (entry.v.infinite || entry.v.v != predicted)
            return fail(in + "; L(" + std::to_string(i) + "," + std::to_string(j) + ")",
                        "v = " + std::to_string(predicted), "v = " + entry.v.str());
    }
    for (const auto& sum : table.sums) {
        std::int64_t i = static_cast<std::int64_t>(sum.i);
        std::int64_t ql = 1;
        for (std::int64_t sbm = 0; sbm < static_cast<std::int64_t>(n) - 1 - i; ++sbm)
            ql *= static_cast<std::int64_t>(B.q());
        std::int64_t predicted = ql * (m - i) - static_cast<std::int64_t>(n) + i;
        if (sum.v.infinite || sum.v.v != predicted)
            return fail(in + "; S_" + std::to_string(i), "v = " + std::to_string(predicted),
                        "v = " + sum.v.str());
    }
    if (table.total != E.comps[n])
        return fail(in + "; sum check", format_poly(E.comps[n]), format_poly(table.total));
    return std::nullopt;
}

inline std::optional<Failure> trial_thm_val(const SuiteEnv& env, Rng& rng, std::uint64_t t,
                                            std::uint32_t max_m) {
    const RingSpec& s = env.spec;
    std::uint32_t m = 1 + static_cast<std::uint32_t>(t % max_m);
    Poly x = sample_with_val(s.alg, rng, s.bounds, m);
    WittVec E = exp_delta(env.ctx, x, m);
    for (std::uint32_t n = 1; n <= m; ++n) {
        Valuation v = v_pi(E.comps[n]);
        if (v.infinite || v.v != static_cast<std::int64_t>(m - n))
            return fail("m=" + std::to_string(m) + "; n=" + std::to_string(n) +
                            "; x=" + format_poly(x),
                        "v(P_n) = " + std::to_string(m - n), "v(P_n) = " + v.str());
    }
    return std::nullopt;
}

using TaylorExpander =
    std::function<ResidueWittVec(const DeltaContext&, const Poly&, std::size_t)>;

inline std::optional<Failure> trial_modinj(const SuiteEnv& env, Rng& rng, std::uint64_t t,
                                           const TaylorExpander& expand) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % s.n_max;
    if (t % 2 == 0) {
        Poly y = sample_poly(s.alg, rng, s.bounds);
        std::uint32_t k = static_cast<std::uint32_t>(n) + 1;
        const CoeffRing& B = s.ring;
        BElem pik = B.one();
        for (std::uint32_t sN = 0; sN < k; ++sN) pik = B.mul(pik, B.pi());
        Poly x = y.scalar_mul(pik);
        ResidueWittVec T = expand(env.ctx, x, n);
        if (!in_ideal_In(T, n + 1))
            return fail("n=" + std::to_string(n) + "; x=pi^" + std::to_string(k) + "*(" +
                            format_poly(y) + "); direction=vanishing",
                        "(0, ..., 0)", format_residue_witt(T));
        return std::nullopt;
    }
    std::uint32_t v = static_cast<std::uint32_t>(t % (n + 1));  // 0..n
    Poly x = sample_with_val(s.alg, rng, s.bounds, v);
    ResidueWittVec T = expand(env.ctx, x, n);
    if (in_ideal_In(T, n + 1))
        return fail("n=" + std::to_string(n) + "; v(x)=" + std::to_string(v) +
                        "; x=" + format_poly(x) + "; direction=injectivity",
                    "nonzero expansion", format_residue_witt(T));
    return std::nullopt;
}

inline std::optional<Failure> trial_topology(const SuiteEnv& env, Rng& rng,
                                             std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = s.n_max;
    std::uint32_t v = static_cast<std::uint32_t>(t % (n + 1));
    Poly x = sample_with_val(s.alg, rng, s.bounds, v);
    ResidueWittVec T = taylor_expand(env.ctx, x, n);
    for (std::size_t j = 0; j <= n; ++j) {
        bool member = in_ideal_In(T, j);
        bool expected = v >= j;
        if (member != expected)
            return fail("n=" + std::to_string(n) + "; v(x)=" + std::to_string(v) +
                            "; j=" + std::to_string(j) + "; x=" + format_poly(x),
                        expected ? "in I_j" : "not in I_j",
                        member ? "in I_j" : "not in I_j");
    }
    return std::nullopt;
}

inline std::optional<Failure> trial_allzero(const SuiteEnv& env, Rng& rng, std::uint64_t) {
    const RingSpec& s = env.spec;
    Poly c = sample_constant(env, rng);
    if (!env.ctx.delta(c).is_zero())
        return fail("c=" + format_poly(c), "delta c = 0 (sampler guard)",
                    format_poly(env.ctx.delta(c)));
    WittVec E = exp_delta(env.ctx, c, s.n_max);
    for (std::size_t n = 1; n <= s.n_max; ++n)
        if (!E.comps[n].is_zero())
            return fail("c=" + format_poly(c) + "; n=" + std::to_string(n), "P_n(c) = 0",
                        format_poly(E.comps[n]));
    if (E.comps[0] != c)
        return fail("c=" + format_poly(c), "P_0(c) = c", format_poly(E.comps[0]));
    return std::nullopt;
}

inline std::optional<Failure> trial_modpip(const SuiteEnv& env, Rng& rng, std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::uint32_t m_cap = static_cast<std::uint32_t>(std::min<std::size_t>(3, s.n_max - 1));
    std::uint32_t m = 1 + static_cast<std::uint32_t>(t % m_cap);
    Poly g = sample_unit_poly(s.alg, rng, s.bounds);
    DeltaContext ctx = manufactured_ctx(s, m, g);
    Poly x = Poly::generator(s.alg, 0);
    std::string in = "m=" + std::to_string(m) + "; phi(u)=" +
                     format_poly(ctx.phi.images()[0]);
    Valuation vd = v_pi(ctx.delta(x));
    if (vd.infinite || vd.v != static_cast<std::int64_t>(m))
        return fail(in + "; guard=v(delta u)", std::to_string(m), vd.str());
    WittVec E = exp_delta(ctx, x, m + 1);
    for (std::uint32_t n = 1; n <= m + 1; ++n) {
        Valuation v = v_pi(E.comps[n]);
        if (v.infinite || v.v != static_cast<std::int64_t>(m - n + 1))
            return fail(in + "; n=" + std::to_string(n),
                        "v(P_n(u)) = " + std::to_string(m - n + 1), "v(P_n(u)) = " + v.str());
    }
    return std::nullopt;
}

inline std::optional<Failure> trial_sadhu(const SuiteEnv& env, Rng& rng, std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::uint32_t m_cap = static_cast<std::uint32_t>(std::min<std::size_t>(3, s.n_max - 1));
    std::uint64_t branch = t % (m_cap + 2);
    if (branch == 0) {
        // constants have all-zero higher Taylor components
        Poly c = sample_constant(env, rng);
        if (!env.ctx.delta(c).is_zero())
            return fail("c=" + format_poly(c), "delta c = 0 (sampler guard)",
                        format_poly(env.ctx.delta(c)));
        ResidueWittVec T = taylor_expand(env.ctx, c, s.n_max);
        for (std::size_t n = 1; n <= s.n_max; ++n)
            if (!T.comps[n].is_zero())
                return fail("c=" + format_poly(c) + "; n=" + std::to_string(n),
                            "component 0", format_residue(T.comps[n]));
        return std::nullopt;
    }
    std::uint32_t m = static_cast<std::uint32_t>(branch - 1);  // 0..m_cap
    Poly x;
    DeltaContext ctx = env.ctx;
    std::string how;
    if (m == 0) {
        for (int attempt = 0;; ++attempt) {
            x = sample_unit_poly(s.alg, rng, s.bounds);
            Valuation vd = v_pi(env.ctx.delta(x));
            if (!vd.infinite && vd.v == 0) break;
            if (attempt > 100)
                return fail("sampling", "a unit-content x with v(delta x) = 0", "exhausted");
        }
        how = "sampled";
    } else {
        ctx = manufactured_ctx(s, m, sample_unit_poly(s.alg, rng, s.bounds));
        x = Poly::generator(s.alg, 0);
        how = "phi(u)=" + format_poly(ctx.phi.images()[0]);
        Valuation vd = v_pi(ctx.delta(x));
        if (vd.infinite || vd.v != static_cast<std::int64_t>(m))
            return fail(how + "; guard=v(delta x)", std::to_string(m), vd.str());
    }
    ResidueWittVec T = taylor_expand(ctx, x, m + 1);
    if (T.comps[m + 1].is_zero())
        return fail("m=" + std::to_string(m) + "; x=" + format_poly(x) + "; " + how,
                    "nonzero component " + std::to_string(m + 1), "0");
    return std::nullopt;
}

inline std::optional<Failure> trial_exp_hom(const SuiteEnv& env, Rng& rng, std::uint64_t t) {
    const RingSpec& s = env.spec;
    std::size_t n = 1 + t % std::max<std::size_t>(1, s.n_max - 1);
    Poly x = sample_poly(s.alg, rng, s.bounds);
    Poly y = sample_poly(s.alg, rng, s.bounds);
    std::string in = "n=" + std::to_string(n) + "; x=" + format_poly(x) +
                     "; y=" + format_poly(y);
    WittVec ex = exp_delta(env.ctx, x, n), ey = exp_delta(env.ctx, y, n);
    WittVec sum = exp_delta(env.ctx, x + y, n);
    if (sum != witt_arith(ex, ey, BOp::Add))
        return fail(in + "; check=additive", format_witt(witt_arith(ex, ey, BOp::Add)),
                    format_witt(sum));
    WittVec prod = exp_delta(env.ctx, x * y, n);
    if (prod != witt_arith(ex, ey, BOp::Mul))
        return fail(in + "; check=multiplicative", format_witt(witt_arith(ex, ey, BOp::Mul)),
                    format_witt(prod));
    WittVec lhs = exp_delta(env.ctx, env.ctx.apply_phi(x), n);
    WittVec rhs = frobenius_F(exp_delta(env.ctx, x, n + 1));
    if (lhs != rhs)
        return fail(in + "; check=exp.phi=F.exp", format_witt(rhs), format_witt(lhs));
    return std::nullopt;
}

// constants_descent runs fixed exhaustive sub-checks instead of sampled trials.
inline void run_constants_descent(const SuiteEnv& env, VerifyReport& report) {
    const RingSpec& s = env.spec;
    const CoeffRing& B = s.ring;

    auto sorted_strings = [](const std::vector<Poly>& polys) {
        std::vector<std::string> out;
        for (const auto& f : polys) out.push_back(format_poly(f));
        std::sort(out.begin(), out.end());
        return out;
    };
    auto join = [](const std::vector<std::string>& v) {
        std::string out = "{";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
        return out + "}";
    };
    auto check = [&](const std::string& what, const std::vector<Poly>& got,
                     const std::vector<std::string>& expected) {
        ++report.trials;
        auto gs = sorted_strings(got);
        bool ok = gs == expected;
        if (ok) {
            for (const auto& f : got)
                if (!f.is_zero() && v_pi(f).at_least(1)) {
                    ok = false;
                    report.failures.push_back({what + "; check=A^delta&piA",
                                               "no constant with positive valuation",
                                               format_poly(f)});
                    return;
                }
            ++report.passes;
        } else {
            report.failures.push_back({what, join(expected), join(gs)});
        }
    };

    // Sub-check 1: A = B, t-degree scaled so the scan stays desk-size.
    std::uint32_t tdeg = B.q() == 2 ? 8 : (B.q() == 4 ? 4 : 2);
    AlgPtr b_only = PolyAlg::make(B, std::size_t{0});
    DeltaContext b_ctx = DeltaContext::standard(b_only);
    std::vector<std::string> scalars;
    for (std::uint64_t idx = 0; idx < B.q(); ++idx)
        scalars.push_back(format_poly(Poly::constant(b_only, B.section(FqElem{idx}))));
    std::sort(scalars.begin(), scalars.end());
    check("A=B; t-degree<=" + std::to_string(tdeg),
          enumerate_constants(b_ctx, {0, tdeg}), scalars);

    // Sub-check 2: one generator with the standard lift; A^delta within the
    // bounds is exactly the F_q-span of the u-monomials.
    if (s.alg->m() >= 1 && env.standard_phi) {
        std::uint32_t udeg = B.q() == 2 ? 2 : 1;
        std::uint32_t tdeg2 = B.q() == 2 ? 2 : 1;
        std::vector<std::string> expected;
        std::vector<Monomial> monos;
        Monomial cur(s.alg->m(), 0);
        collect_monomials(s.alg->m(), udeg, cur, 0, 0, monos);
        std::vector<std::uint64_t> digit(monos.size(), 0);
        std::uint64_t count = 1;
        for (std::size_t k = 0; k < monos.size(); ++k) count *= B.q();
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly::TermMap terms;
            for (std::size_t k = 0; k < monos.size(); ++k)
                if (digit[k] != 0)
                    terms.emplace(monos[k], B.section(FqElem{digit[k]}));
            expected.push_back(format_poly(Poly(s.alg, std::move(terms))));
            for (std::size_t k = 0; k < digit.size(); ++k) {
                if (++digit[k] < B.q()) break;
                digit[k] = 0;
            }
        }
        std::sort(expected.begin(), expected.end());
        DeltaContext std_ctx = DeltaContext::standard(s.alg);
        check("A=B[u..]; u-degree<=" + std::to_string(udeg) +
                  "; t-degree<=" + std::to_string(tdeg2),
              enumerate_constants(std_ctx, {udeg, tdeg2}), expected);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::uint64_t suite_default_trials(const std::string& suite) {
    static const std::map<std::string, std::uint64_t> defaults = {
        {"ghost_hom", 200},       {"frobenius_diagram", 200}, {"universal_poly_oracle", 24},
        {"lift_independence", 100}, {"teichmuller", 200},     {"delta_axioms", 200},
        {"lemma_one", 300},       {"explicit_recursion", 100}, {"lij_valuations", 60},
        {"thm_val", 300},         {"modinj", 300},            {"topology", 150},
        {"allzero", 200},         {"modpip", 90},            {"sadhu_finite", 150},
        {"constants_descent", 1}, {"exp_hom", 100},
    };
    auto it = defaults.find(suite);
    return it == defaults.end() ? 25 : it->second;
}

// Rough monomial-count estimate for one trial; used to refuse configurations
// that cannot run at desk scale.
inline double estimate_trial_monomials(const RingSpec& spec) {
    double per_gen = 1.0;
    for (std::size_t i = 0; i < spec.n_max; ++i) per_gen *= static_cast<double>(spec.ring.q());
    per_gen = per_gen * spec.bounds.gen_degree + 1.0;
    double total = 1.0;
    for (std::size_t i = 0; i < spec.alg->m(); ++i) total *= per_gen;
    return total;
}

inline VerifyReport run_suite(const SuiteConfig& cfg,
                              const detail::TaylorExpander& modinj_expander = taylor_expand) {
    if (!suite_known(cfg.suite)) throw UnknownSuite(cfg.suite);
    if (suite_requires_equal_char(cfg.suite) &&
        cfg.ring.ring.kind() != RingKind::EqualChar)
        throw IncompatibleRing("suite '" + cfg.suite + "' requires an EqualChar ring (got " +
                               to_string(cfg.ring.ring.kind()) + ")");
    if ((cfg.suite == "modpip" || cfg.suite == "sadhu_finite") && cfg.ring.alg->m() == 0)
        throw IncompatibleRing("suite '" + cfg.suite + "' needs at least one generator");
    double est = estimate_trial_monomials(cfg.ring);
    if (est > 1e6)
        throw BudgetExceeded(static_cast<std::uint64_t>(est),
                             "estimated monomial count per trial exceeds 10^6");

    auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    report.suite = cfg.suite;
    report.ring = cfg.ring.name;
    report.seed = cfg.seed;

    detail::SuiteEnv env{cfg.ring, DeltaContext(cfg.ring.alg, cfg.ring.phi),
                         detail::is_standard_phi(cfg.ring)};

    if (cfg.suite == "constants_descent") {
        detail::run_constants_descent(env, report);
    } else {
        std::uint64_t trials = cfg.trials ? cfg.trials : suite_default_trials(cfg.suite);
        std::map<std::pair<std::size_t, int>, std::vector<Poly>> universal_cache;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng(mix_seed(mix_seed(mix_seed(cfg.seed, hash64(cfg.suite)),
                                      hash64(cfg.ring.name)),
                             t));
            std::optional<Failure> f;
            if (cfg.suite == "ghost_hom") f = detail::trial_ghost_hom(env, rng, t);
            else if (cfg.suite == "frobenius_diagram") f = detail::trial_frobenius_diagram(env, rng, t);
            else if (cfg.suite == "universal_poly_oracle") f = detail::trial_universal(env, rng, t, universal_cache);
            else if (cfg.suite == "lift_independence") f = detail::trial_lift_independence(env, rng, t);
            else if (cfg.suite == "teichmuller") f = detail::trial_teichmuller(env, rng, t);
            else if (cfg.suite == "delta_axioms") f = detail::trial_delta_axioms(env, rng, t);
            else if (cfg.suite == "lemma_one") f = detail::trial_lemma_one(env, rng, t);
            else if (cfg.suite == "explicit_recursion") f = detail::trial_explicit_recursion(env, rng, t);
            else if (cfg.suite == "lij_valuations") f = detail::trial_lij_valuations(env, rng, t);
            else if (cfg.suite == "thm_val") f = detail::trial_thm_val(env, rng, t, static_cast<std::uint32_t>(cfg.ring.n_max));
            else if (cfg.suite == "modinj") f = detail::trial_modinj(env, rng, t, modinj_expander);
            else if (cfg.suite == "topology") f = detail::trial_topology(env, rng, t);
            else if (cfg.suite == "allzero") f = detail::trial_allzero(env, rng, t);
            else if (cfg.suite == "modpip") f = detail::trial_modpip(env, rng, t);
            else if (cfg.suite == "sadhu_finite") f = detail::trial_sadhu(env, rng, t);
            else if (cfg.suite == "exp_hom") f = detail::trial_exp_hom(env, rng, t);
            ++report.trials;
            if (f) report.failures.push_back(std::move(*f));
            else ++report.passes;
        }
    }

    auto end = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return report;
}

// ---------------------------------------------------------------------------

inline RingSpec make_ring_spec(std::string name, const RingConfig& rc) {
    return RingSpec{std::move(name), rc.ring, rc.alg, rc.phi,
                    rc.ring.q() == 2 ? std::size_t{4} : std::size_t{3}, SampleBounds{}};
}

inline std::vector<RingSpec> default_rings() {
    std::vector<RingSpec> out;
    auto add = [&](const std::string& name, CoeffRing ring) {
        AlgPtr alg = PolyAlg::make(ring, std::size_t{1});
        FrobLift phi(alg, {Poly::generator(alg, 0).pow(ring.q())});
        out.push_back(RingSpec{name, std::move(ring), alg, std::move(phi),
                               alg->base().q() == 2 ? std::size_t{4} : std::size_t{3},
                               SampleBounds{}});
    };
    add("eqchar2", CoeffRing::equal_char(2, 1));
    add("eqchar4", CoeffRing::equal_char(2, 2));
    add("mixed2", CoeffRing::mixed_char(2));
    add("mixed3", CoeffRing::mixed_char(3));
    add("ramified", CoeffRing::mixed_char_ramified());
    return out;
}

// Runs one named suite (or every suite when the filter is empty) over each
// ring; incompatible (suite, ring) pairs produce SKIPPED reports.
inline std::vector<VerifyReport> run_matching(const std::vector<RingSpec>& rings,
                                              const std::string& filter,
                                              std::uint64_t seed, std::uint64_t trials = 0) {
    if (!filter.empty() && !suite_known(filter)) throw UnknownSuite(filter);
    std::vector<VerifyReport> reports;
    for (const auto& ring : rings) {
        for (const auto& suite : suite_names()) {
            if (!filter.empty() && suite != filter) continue;
            if (suite_requires_equal_char(suite) && ring.ring.kind() != RingKind::EqualChar) {
                VerifyReport r;
                r.suite = suite;
                r.ring = ring.name;
                r.skipped = true;
                r.skip_reason = "requires an EqualChar ring";
                r.seed = seed;
                reports.push_back(std::move(r));
                continue;
            }
            try {
                reports.push_back(run_suite(SuiteConfig{suite, ring, seed, trials}));
            } catch (const Error& e) {
                VerifyReport r;
                r.suite = suite;
                r.ring = ring.name;
                r.seed = seed;
                r.trials = 1;
                r.failures.push_back({"suite execution", "no exception", e.what()});
                reports.push_back(std::move(r));
            }
        }
    }
    return reports;
}

inline std::vector<VerifyReport> run_all(const std::vector<RingSpec>& rings,
                                         std::uint64_t seed, std::uint64_t trials = 0) {
    return run_matching(rings, "", seed, trials);
}

}  // namespace wittlab
