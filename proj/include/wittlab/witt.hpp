#pragma once

// Truncated pi-typical Witt vectors W_n(A) = A^(n+1) over torsion-free A,
// with ring structure defined through the ghost map
//
//   w_i = x_0^{q^i} + pi x_1^{q^{i-1}} + ... + pi^i x_i,
//
// plus Frobenius F, restriction T, Teichmuller theta, Verschiebung V,
// universal structure polynomials, and Witt vectors over A_0 = A/pi A.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/parse.hpp"
#include "wittlab/poly.hpp"

namespace wittlab {

struct WittVec {
    AlgPtr alg;
    std::vector<Poly> comps;  // (x_0, ..., x_n), n + 1 >= 1

    std::size_t n() const { return comps.size() - 1; }
    bool operator==(const WittVec&) const = default;
};

struct GhostVec {
    AlgPtr alg;
    std::vector<Poly> comps;  // (w_0, ..., w_n)

    std::size_t n() const { return comps.size() - 1; }
    bool operator==(const GhostVec&) const = default;
};

struct ResidueWittVec {
    AlgPtr alg;
    std::vector<ResiduePoly> comps;

    std::size_t n() const { return comps.size() - 1; }
    bool operator==(const ResidueWittVec&) const = default;
};

namespace detail {

inline void check_vec(const AlgPtr& alg, std::size_t len, const char* what) {
    if (!alg) throw DomainError(std::string(what) + ": missing algebra");
    if (len == 0) throw DomainError(std::string(what) + ": length must be >= 1");
}

inline void check_pair_len(std::size_t a, std::size_t b) {
    if (a != b) throw IncompatibleRing("Witt vector length mismatch");
}

// Powers 1, pi, pi^2, ... of the uniformizer as scalars.
inline std::vector<BElem> pi_powers(const CoeffRing& B, std::size_t upto) {
    std::vector<BElem> out;
    out.reserve(upto + 1);
    out.push_back(B.one());
    for (std::size_t i = 1; i <= upto; ++i) out.push_back(B.mul(out.back(), B.pi()));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline WittVec witt_zero(AlgPtr alg, std::size_t n) {
    std::vector<Poly> c(n + 1, Poly::zero(alg));
    return WittVec{std::move(alg), std::move(c)};
}

inline WittVec witt_one(AlgPtr alg, std::size_t n) {
    WittVec x = witt_zero(alg, n);
    x.comps[0] = Poly::one(x.alg);
    return x;
}

inline WittVec teichmuller(const Poly& a, std::size_t n) {
    WittVec x = witt_zero(a.alg(), n);
    x.comps[0] = a;
    return x;
}

// V(x_0, ..., x_n) = (0, x_0, ..., x_n), one component longer.
inline WittVec verschiebung(const WittVec& x) {
    detail::check_vec(x.alg, x.comps.size(), "verschiebung");
    WittVec out{x.alg, {Poly::zero(x.alg)}};
    out.comps.insert(out.comps.end(), x.comps.begin(), x.comps.end());
    return out;
}

// T(x_0, ..., x_n) = (x_0, ..., x_{n-1}).
inline WittVec restrict_T(const WittVec& x) {
    if (x.comps.size() < 2) throw DomainError("restrict_T needs length >= 2");
    return WittVec{x.alg, std::vector<Poly>(x.comps.begin(), x.comps.end() - 1)};
}

// Ghost-side truncation and shift.
inline GhostVec truncate_Tw(const GhostVec& w) {
    if (w.comps.size() < 2) throw DomainError("truncate_Tw needs length >= 2");
    return GhostVec{w.alg, std::vector<Poly>(w.comps.begin(), w.comps.end() - 1)};
}

inline GhostVec shift_Fw(const GhostVec& w) {
    if (w.comps.size() < 2) throw DomainError("shift_Fw needs length >= 2");
    return GhostVec{w.alg, std::vector<Poly>(w.comps.begin() + 1, w.comps.end())};
}

// ---------------------------------------------------------------------------

inline GhostVec ghost(const WittVec& x) {
    detail::check_vec(x.alg, x.comps.size(), "ghost");
    const CoeffRing& B = x.alg->base();
    std::uint64_t q = B.q();
    auto pis = detail::pi_powers(B, x.n());
    // pw[j] holds x_j^{q^{i-j}} during round i
    std::vector<Poly> pw;
    std::vector<Poly> out;
    for (std::size_t i = 0; i < x.comps.size(); ++i) {
        for (auto& p : pw) p = p.pow(q);
        pw.push_back(x.comps[i]);
        Poly w = Poly::zero(x.alg);
        for (std::size_t j = 0; j <= i; ++j) w = w + pw[j].scalar_mul(pis[j]);
        out.push_back(std::move(w));
    }
    return GhostVec{x.alg, std::move(out)};
}

inline WittVec unghost(const GhostVec& w) {
    detail::check_vec(w.alg, w.comps.size(), "unghost");
    const CoeffRing& B = w.alg->base();
    std::uint64_t q = B.q();
    auto pis = detail::pi_powers(B, w.n());
    std::vector<Poly> xs;
    std::vector<Poly> xq;  // xq[j] holds x_j^{q^{i-j}} during round i
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        for (auto& p : xq) p = p.pow(q);
        Poly acc = w.comps[i];
        for (std::size_t j = 0; j < i; ++j) acc = acc - xq[j].scalar_mul(pis[j]);
        Poly xi;
        try {
            xi = exact_div_pi(acc, static_cast<std::uint32_t>(i));
        } catch (const NotDivisible&) {
            throw NotInGhostImage(i, "component " + std::to_string(i) +
                                         " is not divisible by pi^" + std::to_string(i));
        }
        xq.push_back(xi);
        xs.push_back(std::move(xi));
    }
    return WittVec{w.alg, std::move(xs)};
}

// ---------------------------------------------------------------------------
// Ring operations: transport to ghost coordinates, operate componentwise,
// come back. Exact because A is torsion-free.

inline GhostVec ghost_arith(const GhostVec& a, const GhostVec& b, BOp op) {
    check_same_alg(a.alg, b.alg);
    detail::check_pair_len(a.comps.size(), b.comps.size());
    std::vector<Poly> out;
    out.reserve(a.comps.size());
    for (std::size_t i = 0; i < a.comps.size(); ++i) {
        switch (op) {
            case BOp::Add: out.push_back(a.comps[i] + b.comps[i]); break;
            case BOp::Sub: out.push_back(a.comps[i] - b.comps[i]); break;
            case BOp::Mul: out.push_back(a.comps[i] * b.comps[i]); break;
            case BOp::Neg: out.push_back(-a.comps[i]); break;
        }
    }
    return GhostVec{a.alg, std::move(out)};
}

inline WittVec witt_arith(const WittVec& x, const WittVec& y, BOp op) {
    check_same_alg(x.alg, y.alg);
    detail::check_pair_len(x.comps.size(), y.comps.size());
    return unghost(ghost_arith(ghost(x), ghost(y), op));
}

inline WittVec witt_neg(const WittVec& x) { return witt_arith(x, x, BOp::Neg); }

// F: W_n(A) -> W_{n-1}(A), ghost-conjugate of the left shift.
inline WittVec frobenius_F(const WittVec& x) {
    if (x.comps.size() < 2) throw DomainError("frobenius_F needs length >= 2");
    return unghost(shift_Fw(ghost(x)));
}

// ---------------------------------------------------------------------------
// Universal structure polynomials in B[x_0..x_n, y_0..y_n]: evaluating
// component k at concrete Witt components reproduces witt_arith.

inline std::vector<Poly> universal_polys(const CoeffRing& base, std::size_t n, BOp op,
                                         std::size_t bound = 4) {
    if (op != BOp::Add && op != BOp::Mul)
        throw DomainError("universal_polys: op must be add or mul");
    if (n > bound)
        throw BoundExceeded("universal_polys: n = " + std::to_string(n) +
                            " exceeds bound " + std::to_string(bound));
    std::vector<std::string> names;
    for (std::size_t i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i <= n; ++i) names.push_back("y" + std::to_string(i));
    AlgPtr A = PolyAlg::make(base, names);
    WittVec X{A, {}}, Y{A, {}};
    for (std::size_t i = 0; i <= n; ++i) {
        X.comps.push_back(Poly::generator(A, i));
        Y.comps.push_back(Poly::generator(A, n + 1 + i));
    }
    return witt_arith(X, Y, op).comps;
}

// Evaluates a universal polynomial at concrete components (x_0..x_n, y_0..y_n).
inline Poly eval_universal(const Poly& s, const std::vector<Poly>& args) {
    if (args.empty()) throw DomainError("eval_universal: no arguments");
    const AlgPtr& target = args[0].alg();
    if (s.alg()->m() != args.size())
        throw DomainError("eval_universal: argument count mismatch");
    if (s.alg()->base() != target->base())
        throw IncompatibleRing("eval_universal: coefficient ring mismatch");
    Poly out = Poly::zero(target);
    for (const auto& [e, c] : s.terms()) {
        Poly term = Poly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * args[i].pow(e[i]);
        out = out + term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Witt vectors over the residue algebra A_0. Ghost is useless there (A_0 has
// pi-torsion), so operations lift to A, compute, and reduce; the result is
// lift-independent because the structure polynomials have B-coefficients.

inline ResidueWittVec to_residue(const WittVec& x) {
    std::vector<ResiduePoly> out;
    out.reserve(x.comps.size());
    for (const auto& c : x.comps) out.push_back(to_residue(c));
    return ResidueWittVec{x.alg, std::move(out)};
}

inline WittVec lift(const ResidueWittVec& x) {
    std::vector<Poly> out;
    out.reserve(x.comps.size());
    for (const auto& c : x.comps) out.push_back(lift(c));
    return WittVec{x.alg, std::move(out)};
}

inline ResidueWittVec residue_witt_arith(const ResidueWittVec& x, const ResidueWittVec& y,
                                         BOp op) {
    check_same_alg(x.alg, y.alg);
    detail::check_pair_len(x.comps.size(), y.comps.size());
    return to_residue(witt_arith(lift(x), lift(y), op));
}

// True iff the first n components vanish (membership in the ideal I_n).
inline bool in_ideal_In(const ResidueWittVec& x, std::size_t n) {
    if (n > x.comps.size()) throw DomainError("in_ideal_In: n exceeds length");
    for (std::size_t i = 0; i < n; ++i)
        if (!x.comps[i].is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Scalar action of R: r acts through exp_delta(r) = unghost(r, r, ..., r),
// which is constant because the Frobenius lift restricts to the identity on B.

inline WittVec structure_map_R(const BElem& r, std::size_t n, AlgPtr target) {
    Poly c = Poly::constant(target, r);
    GhostVec w{target, std::vector<Poly>(n + 1, c)};
    return unghost(w);
}

// ---------------------------------------------------------------------------
// Text form "(x_0, ..., x_n)" mirroring the usual tuple notation.

namespace detail {

template <typename Vec, typename Fmt>
std::string format_tuple(const Vec& v, Fmt fmt) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.comps.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v.comps[i]);
    }
    return out + ")";
}

}  // namespace detail

inline std::string format_witt(const WittVec& x) {
    return detail::format_tuple(x, [](const Poly& f) { return format_poly(f); });
}

inline std::string format_ghost(const GhostVec& w) {
    return detail::format_tuple(w, [](const Poly& f) { return format_poly(f); });
}

inline std::string format_residue_witt(const ResidueWittVec& x) {
    return detail::format_tuple(x, [](const ResiduePoly& f) { return format_residue(f); });
}

// Parses "(p_0, ..., p_n)"; bare "p" is accepted as length 1.
inline std::vector<Poly> parse_components(const std::string& text, const AlgPtr& alg) {
    std::size_t a = text.find_first_not_of(" \t");
    std::size_t b = text.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError(0, "empty Witt vector");
    if (text[a] != '(' || text[b] != ')') return {parse_poly(text, alg)};
    std::vector<Poly> out;
    std::size_t depth = 0, start = a + 1;
    for (std::size_t i = a + 1; i <= b; ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        if (c == ')' && i < b) --depth;
        if ((c == ',' && depth == 0) || i == b) {
            out.push_back(parse_poly(text.substr(start, i - start), alg));
            start = i + 1;
        }
    }
    return out;
}

inline WittVec parse_witt(const std::string& text, AlgPtr alg) {
    auto comps = parse_components(text, alg);
    return WittVec{std::move(alg), std::move(comps)};
}

inline GhostVec parse_ghost(const std::string& text, AlgPtr alg) {
    auto comps = parse_components(text, alg);
    return GhostVec{std::move(alg), std::move(comps)};
}

}  // namespace wittlab
