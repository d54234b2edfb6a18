#pragma once

// Sparse multivariate polynomial algebras A = B[u_1,...,u_m] over a
// coefficient ring, their reductions A_0 = A/pi A, and formatting.
// Polynomials are immutable values tied to a shared PolyAlg descriptor.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/coeff_ring.hpp"
#include "wittlab/errors.hpp"

namespace wittlab {

// Exponent vector of length m.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

// Graded lexicographic order: lower total degree first, then lexicographic
// on exponents. Maps iterate ascending, so the constant term comes first.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint64_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// ---------------------------------------------------------------------------

class PolyAlg;
using AlgPtr = std::shared_ptr<const PolyAlg>;

class PolyAlg {
public:
    static AlgPtr make(CoeffRing base, std::size_t m) {
        std::vector<std::string> names;
        if (m == 1) {
            names = {"u"};
        } else {
            for (std::size_t i = 1; i <= m; ++i) names.push_back("u" + std::to_string(i));
        }
        return make(std::move(base), std::move(names));
    }

    static AlgPtr make(CoeffRing base, std::vector<std::string> names) {
        for (const auto& n : names) validate_name(n);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw DomainError("duplicate generator name: " + names[i]);
        return AlgPtr(new PolyAlg(std::move(base), std::move(names)));
    }

    const CoeffRing& base() const { return base_; }
    std::size_t m() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        throw DomainError("unknown generator: " + name);
    }

    bool operator==(const PolyAlg& o) const {
        return base_ == o.base_ && names_ == o.names_;
    }
    bool operator!=(const PolyAlg& o) const { return !(*this == o); }

private:
    PolyAlg(CoeffRing base, std::vector<std::string> names)
        : base_(std::move(base)), names_(std::move(names)) {}

    static void validate_name(const std::string& n) {
        if (n.empty()) throw DomainError("empty generator name");
        if (n == "t" || n == "z" || n == "i")
            throw DomainError("generator name '" + n + "' is reserved");
        if (!std::isalpha(static_cast<unsigned char>(n[0])))
            throw DomainError("generator name must start with a letter: " + n);
        for (char c : n)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw DomainError("bad character in generator name: " + n);
    }

    CoeffRing base_;
    std::vector<std::string> names_;
};

inline void check_same_alg(const AlgPtr& a, const AlgPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || *a != *b) throw IncompatibleRing("polynomial algebra mismatch");
}

// ---------------------------------------------------------------------------

class Poly {
public:
    using TermMap = std::map<Monomial, BElem, GrlexLess>;

    Poly() = default;
    explicit Poly(AlgPtr alg) : alg_(std::move(alg)) {}
    Poly(AlgPtr alg, TermMap terms) : alg_(std::move(alg)), terms_(std::move(terms)) {}

    static Poly zero(AlgPtr alg) { return Poly(std::move(alg)); }

    static Poly constant(AlgPtr alg, BElem c) {
        Poly f(alg);
        if (!alg->base().is_zero(c)) f.terms_.emplace(Monomial(alg->m(), 0), std::move(c));
        return f;
    }

    static Poly one(AlgPtr alg) {
        BElem c = alg->base().one();
        return constant(std::move(alg), std::move(c));
    }

    static Poly from_int(AlgPtr alg, const mpz_class& n) {
        BElem c = alg->base().from_int(n);
        return constant(std::move(alg), std::move(c));
    }

    static Poly generator(AlgPtr alg, std::size_t i) {
        if (i >= alg->m()) throw DomainError("generator index out of range");
        Monomial e(alg->m(), 0);
        e[i] = 1;
        return monomial(std::move(alg), std::move(e), Monomial::value_type{1});
    }

    static Poly monomial(AlgPtr alg, Monomial e, std::uint32_t c) {
        BElem cc = alg->base().from_int(c);
        return monomial(std::move(alg), std::move(e), std::move(cc));
    }

    static Poly monomial(AlgPtr alg, Monomial e, BElem c) {
        if (e.size() != alg->m()) throw DomainError("exponent vector length mismatch");
        Poly f(alg);
        if (!alg->base().is_zero(c)) f.terms_.emplace(std::move(e), std::move(c));
        return f;
    }

    const AlgPtr& alg() const { return alg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::uint64_t degree() const {  // total degree; 0 for the zero polynomial
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    BElem constant_term() const {
        Monomial zero_e(alg_->m(), 0);
        auto it = terms_.find(zero_e);
        return it == terms_.end() ? alg_->base().zero() : it->second;
    }

    BElem coeff(const Monomial& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? alg_->base().zero() : it->second;
    }

    bool operator==(const Poly& o) const {
        return *alg_ == *o.alg_ && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        check_same_alg(alg_, o.alg_);
        const CoeffRing& B = alg_->base();
        // Linear merge; both maps already iterate in grlex order.
        TermMap out;
        GrlexLess less;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() ||
                (a != terms_.end() && less(a->first, b->first))) {
                out.emplace_hint(out.end(), a->first, a->second);
                ++a;
            } else if (a == terms_.end() || less(b->first, a->first)) {
                out.emplace_hint(out.end(), b->first, b->second);
                ++b;
            } else {
                BElem s = B.add(a->second, b->second);
                if (!B.is_zero(s)) out.emplace_hint(out.end(), a->first, std::move(s));
                ++a;
                ++b;
            }
        }
        return Poly(alg_, std::move(out));
    }

    Poly operator-() const {
        const CoeffRing& B = alg_->base();
        TermMap out;
        for (const auto& [e, c] : terms_) out.emplace(e, B.neg(c));
        return Poly(alg_, std::move(out));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        check_same_alg(alg_, o.alg_);
        if (this == &o) return square();
        const CoeffRing& B = alg_->base();
        if (dense_applicable(o)) return dense_mul(o);
        TermMap out;
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                BElem c = B.mul(c1, c2);
                if (B.is_zero(c)) continue;
                Monomial e(e1.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                auto it = out.find(e);
                if (it == out.end()) {
                    out.emplace(std::move(e), std::move(c));
                } else {
                    it->second = B.add(it->second, c);
                    if (B.is_zero(it->second)) out.erase(it);
                }
            }
        }
        return Poly(alg_, std::move(out));
    }

    // Half the coefficient multiplications of the generic product: cross
    // terms are computed once and doubled.
    Poly square() const {
        const CoeffRing& B = alg_->base();
        if (dense_applicable(*this)) return dense_square();
        TermMap out;
        auto accum = [&](Monomial e, BElem c) {
            if (B.is_zero(c)) return;
            auto it = out.find(e);
            if (it == out.end()) {
                out.emplace(std::move(e), std::move(c));
            } else {
                it->second = B.add(it->second, c);
                if (B.is_zero(it->second)) out.erase(it);
            }
        };
        for (auto i = terms_.begin(); i != terms_.end(); ++i) {
            Monomial e(i->first.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = 2 * i->first[k];
            accum(std::move(e), B.mul(i->second, i->second));
            for (auto j = std::next(i); j != terms_.end(); ++j) {
                BElem c = B.mul(i->second, j->second);
                Monomial f(i->first.size());
                for (std::size_t k = 0; k < f.size(); ++k) f[k] = i->first[k] + j->first[k];
                accum(std::move(f), B.add(c, c));
            }
        }
        return Poly(alg_, std::move(out));
    }

    Poly scalar_mul(const BElem& s) const {
        const CoeffRing& B = alg_->base();
        TermMap out;
        for (const auto& [e, c] : terms_) {
            BElem v = B.mul(c, s);
            if (!B.is_zero(v)) out.emplace(e, std::move(v));
        }
        return Poly(alg_, std::move(out));
    }

    Poly times_pi() const { return scalar_mul(alg_->base().pi()); }

    // In characteristic p the p-th power distributes over terms, so powers
    // divisible by p reduce to a coefficient Frobenius plus exponent scaling.
    Poly pow(std::uint64_t n) const {
        if (n == 0) return one(alg_);
        if (n == 1) return *this;
        const CoeffRing& B = alg_->base();
        if (B.kind() == RingKind::EqualChar && n % B.p() == 0)
            return char_p_power().pow(n / B.p());
        if (n % 2 == 0) return pow(n / 2).square();
        return *this * pow(n - 1);
    }

private:
    // Products of fat univariate operands fold many pairs into few distinct
    // degrees; an array indexed by degree with in-place accumulation then
    // beats map lookups. Sparse and multivariate shapes stay on the map path.
    static constexpr std::size_t kDenseSlotCap = std::size_t{1} << 16;

    std::uint64_t uni_degree() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first[0];
    }

    bool dense_applicable(const Poly& o) const {
        if (alg_->m() != 1 || terms_.empty() || o.terms_.empty()) return false;
        std::uint64_t slots = uni_degree() + o.uni_degree() + 1;
        if (slots > kDenseSlotCap) return false;
        return terms_.size() * o.terms_.size() >= slots;
    }

    Poly from_dense(std::vector<BElem>& acc, const std::vector<char>& used) const {
        const CoeffRing& B = alg_->base();
        TermMap out;
        for (std::size_t k = 0; k < acc.size(); ++k) {
            if (!used[k] || B.is_zero(acc[k])) continue;
            out.emplace_hint(out.end(), Monomial{static_cast<std::uint32_t>(k)},
                             std::move(acc[k]));
        }
        return Poly(alg_, std::move(out));
    }

    Poly dense_mul(const Poly& o) const {
        const CoeffRing& B = alg_->base();
        std::vector<BElem> acc(uni_degree() + o.uni_degree() + 1);
        std::vector<char> used(acc.size(), 0);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                std::size_t k = e1[0] + std::size_t{e2[0]};
                if (used[k]) {
                    B.addmul(acc[k], c1, c2);
                } else {
                    acc[k] = B.mul(c1, c2);
                    used[k] = 1;
                }
            }
        }
        return from_dense(acc, used);
    }

    Poly dense_square() const {
        const CoeffRing& B = alg_->base();
        std::vector<std::pair<std::uint32_t, const BElem*>> ts;
        ts.reserve(terms_.size());
        for (const auto& [e, c] : terms_) ts.emplace_back(e[0], &c);
        std::vector<BElem> acc(2 * uni_degree() + 1);
        std::vector<char> used(acc.size(), 0);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                std::size_t k = ts[i].first + std::size_t{ts[j].first};
                if (used[k]) {
                    B.addmul(acc[k], *ts[i].second, *ts[j].second);
                } else {
                    acc[k] = B.mul(*ts[i].second, *ts[j].second);
                    used[k] = 1;
                }
            }
        }
        // Cross terms appear twice in the expansion; double once, then add
        // the diagonal squares.
        for (std::size_t k = 0; k < acc.size(); ++k)
            if (used[k]) acc[k] = B.add(acc[k], acc[k]);
        for (const auto& [d, c] : ts) {
            std::size_t k = 2 * std::size_t{d};
            if (used[k]) {
                B.addmul(acc[k], *c, *c);
            } else {
                acc[k] = B.mul(*c, *c);
                used[k] = 1;
            }
        }
        return from_dense(acc, used);
    }

    Poly char_p_power() const {
        const CoeffRing& B = alg_->base();
        TermMap out;
        for (const auto& [e, c] : terms_) {
            Monomial pe(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) pe[i] = e[i] * B.p();
            out.emplace(std::move(pe), B.pow(c, B.p()));
        }
        return Poly(alg_, std::move(out));
    }

    AlgPtr alg_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Content valuation and exact division by powers of pi.

inline Valuation v_pi(const Poly& f) {
    const CoeffRing& B = f.alg()->base();
    Valuation best = Valuation::inf();
    for (const auto& [e, c] : f.terms()) {
        Valuation v = B.v_pi(c);
        if (v < best) best = v;
    }
    return best;
}

inline Poly exact_div_pi(const Poly& f, std::uint32_t n) {
    if (n == 0) return f;
    const CoeffRing& B = f.alg()->base();
    Poly::TermMap out;
    for (const auto& [e, c] : f.terms()) out.emplace(e, B.exact_div_pi(c, n));
    return Poly(f.alg(), std::move(out));
}

// ---------------------------------------------------------------------------
// Reduction A -> A_0 = A/pi A and the coefficient-wise section back.

class ResiduePoly {
public:
    using TermMap = std::map<Monomial, FqElem, GrlexLess>;

    ResiduePoly() = default;
    explicit ResiduePoly(AlgPtr alg) : alg_(std::move(alg)) {}
    ResiduePoly(AlgPtr alg, TermMap terms) : alg_(std::move(alg)), terms_(std::move(terms)) {}

    static ResiduePoly zero(AlgPtr alg) { return ResiduePoly(std::move(alg)); }

    static ResiduePoly constant(AlgPtr alg, FqElem c) {
        ResiduePoly f(alg);
        if (!c.is_zero()) f.terms_.emplace(Monomial(alg->m(), 0), c);
        return f;
    }

    static ResiduePoly one(AlgPtr alg) { return constant(std::move(alg), FqElem{1}); }

    static ResiduePoly generator(AlgPtr alg, std::size_t i) {
        if (i >= alg->m()) throw DomainError("generator index out of range");
        Monomial e(alg->m(), 0);
        e[i] = 1;
        ResiduePoly f(alg);
        f.terms_.emplace(std::move(e), FqElem{1});
        return f;
    }

    const AlgPtr& alg() const { return alg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    bool operator==(const ResiduePoly& o) const {
        return *alg_ == *o.alg_ && terms_ == o.terms_;
    }
    bool operator!=(const ResiduePoly& o) const { return !(*this == o); }

    ResiduePoly operator+(const ResiduePoly& o) const {
        check_same_alg(alg_, o.alg_);
        const CoeffRing& B = alg_->base();
        TermMap out = terms_;
        for (const auto& [e, c] : o.terms_) {
            auto it = out.find(e);
            if (it == out.end()) {
                out.emplace(e, c);
            } else {
                it->second = B.fq_add(it->second, c);
                if (it->second.is_zero()) out.erase(it);
            }
        }
        return ResiduePoly(alg_, std::move(out));
    }

    ResiduePoly operator-() const {
        const CoeffRing& B = alg_->base();
        TermMap out;
        for (const auto& [e, c] : terms_) out.emplace(e, B.fq_neg(c));
        return ResiduePoly(alg_, std::move(out));
    }

    ResiduePoly operator-(const ResiduePoly& o) const { return *this + (-o); }

    ResiduePoly operator*(const ResiduePoly& o) const {
        check_same_alg(alg_, o.alg_);
        const CoeffRing& B = alg_->base();
        TermMap out;
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                FqElem c = B.fq_mul(c1, c2);
                if (c.is_zero()) continue;
                Monomial e(e1.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                auto it = out.find(e);
                if (it == out.end()) {
                    out.emplace(std::move(e), c);
                } else {
                    it->second = B.fq_add(it->second, c);
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        return ResiduePoly(alg_, std::move(out));
    }

    // A_0 has characteristic p, so the same p-power shortcut applies.
    ResiduePoly pow(std::uint64_t n) const {
        if (n == 0) return one(alg_);
        if (n == 1) return *this;
        const CoeffRing& B = alg_->base();
        if (n % B.p() == 0) {
            TermMap out;
            for (const auto& [e, c] : terms_) {
                Monomial pe(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) pe[i] = e[i] * B.p();
                out.emplace(std::move(pe), B.fq_pow(c, B.p()));
            }
            return ResiduePoly(alg_, std::move(out)).pow(n / B.p());
        }
        if (n % 2 == 0) {
            ResiduePoly s = pow(n / 2);
            return s * s;
        }
        return *this * pow(n - 1);
    }

private:
    AlgPtr alg_;
    TermMap terms_;
};

inline ResiduePoly to_residue(const Poly& f) {
    const CoeffRing& B = f.alg()->base();
    ResiduePoly::TermMap out;
    for (const auto& [e, c] : f.terms()) {
        FqElem r = B.residue(c);
        if (!r.is_zero()) out.emplace(e, r);
    }
    return ResiduePoly(f.alg(), std::move(out));
}

inline Poly lift(const ResiduePoly& g) {
    const CoeffRing& B = g.alg()->base();
    Poly::TermMap out;
    for (const auto& [e, c] : g.terms()) out.emplace(e, B.section(c));
    return Poly(g.alg(), std::move(out));
}

// Coefficients to canonical representatives mod pi^(N+1).
inline Poly reduce_mod(const Poly& f, std::uint32_t N) {
    const CoeffRing& B = f.alg()->base();
    Poly::TermMap out;
    for (const auto& [e, c] : f.terms()) {
        BElem r = B.reduce_mod(c, N);
        if (!B.is_zero(r)) out.emplace(e, std::move(r));
    }
    return Poly(f.alg(), std::move(out));
}

// ---------------------------------------------------------------------------
// Frobenius lifts phi on A and the derived pi-derivation delta.

class FrobLift {
public:
    FrobLift(AlgPtr alg, std::vector<Poly> images)
        : alg_(std::move(alg)), images_(std::move(images)) {
        if (images_.size() != alg_->m())
            throw DomainError("Frobenius lift needs one image per generator");
        for (const auto& img : images_) check_same_alg(alg_, img.alg());
    }

    const AlgPtr& alg() const { return alg_; }
    const std::vector<Poly>& images() const { return images_; }

    bool operator==(const FrobLift& o) const {
        return *alg_ == *o.alg_ && images_ == o.images_;
    }

private:
    AlgPtr alg_;
    std::vector<Poly> images_;
};

std::string format_residue(const ResiduePoly& f);  // defined below

// Checks phi(u_i) == u_i^q mod pi for every generator.
inline void validate_frob_lift(const FrobLift& phi) {
    const AlgPtr& A = phi.alg();
    std::uint64_t q = A->base().q();
    for (std::size_t i = 0; i < A->m(); ++i) {
        Poly diff = phi.images()[i] - Poly::generator(A, i).pow(q);
        if (!v_pi(diff).at_least(1))
            throw NotAFrobeniusLift(A->names()[i], format_residue(to_residue(diff)));
    }
}

// Substitutes generator images; identity on coefficients.
inline Poly apply_hom(const FrobLift& phi, const Poly& f) {
    const AlgPtr& A = phi.alg();
    check_same_alg(A, f.alg());
    Poly out = Poly::zero(A);
    for (const auto& [e, c] : f.terms()) {
        Poly term = Poly::constant(A, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * phi.images()[i].pow(e[i]);
        out = out + term;
    }
    return out;
}

// delta(f) = (phi(f) - f^q) / pi.
inline Poly delta_apply(const FrobLift& phi, const Poly& f) {
    const CoeffRing& B = phi.alg()->base();
    Poly num = apply_hom(phi, f) - f.pow(B.q());
    try {
        return exact_div_pi(num, 1);
    } catch (const NotDivisible&) {
        throw InternalError("delta numerator not divisible by pi; phi is not a lift");
    }
}

// C_pi(x, y) = (x^q + y^q - (x+y)^q) / pi, and 0 in equal characteristic.
inline Poly c_pi(const Poly& x, const Poly& y) {
    check_same_alg(x.alg(), y.alg());
    const CoeffRing& B = x.alg()->base();
    if (B.kind() == RingKind::EqualChar) return Poly::zero(x.alg());
    std::uint64_t q = B.q();
    Poly num = x.pow(q) + y.pow(q) - (x + y).pow(q);
    return exact_div_pi(num, 1);
}

// ---------------------------------------------------------------------------
// Canonical text form. Terms ascend in graded-lex order; coefficients print
// compactly ("1+t", "3-2*i") and are parenthesized when they multiply a
// monomial and contain a sign.

namespace detail {

inline bool needs_parens(const std::string& s) {
    return s.find('+') != std::string::npos || s.find('-') != std::string::npos;
}

inline std::string format_fq(const CoeffRing& B, FqElem c) {
    if (c.is_zero()) return "0";
    if (B.h() == 1) return std::to_string(c.idx);
    auto d = B.fq_digits(c);
    std::string out;
    for (std::uint32_t k = 0; k < d.size(); ++k) {
        if (d[k] == 0) continue;
        std::string piece;
        if (k == 0) {
            piece = std::to_string(d[k]);
        } else {
            piece = (d[k] == 1 ? "" : std::to_string(d[k]) + "*");
            piece += "z";
            if (k > 1) piece += "^" + std::to_string(k);
        }
        if (!out.empty()) out += "+";
        out += piece;
    }
    return out;
}

inline std::string format_b(const CoeffRing& B, const BElem& a) {
    switch (B.kind()) {
        case RingKind::EqualChar: {
            const auto& c = a.tpoly().c;
            if (c.empty()) return "0";
            std::string out;
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (c[k] == 0) continue;
                std::string cs = format_fq(B, FqElem{c[k]});
                std::string piece;
                if (k == 0) {
                    piece = cs;
                } else {
                    if (cs != "1") piece = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*";
                    piece += "t";
                    if (k > 1) piece += "^" + std::to_string(k);
                }
                if (!out.empty()) out += "+";
                out += piece;
            }
            return out;
        }
        case RingKind::MixedChar:
            return a.zint().get_str();
        case RingKind::MixedCharRamified: {
            const auto& g = a.gauss();
            if (g.im == 0) return g.re.get_str();
            std::string im_part = (g.im == 1)    ? "i"
                                  : (g.im == -1) ? "-i"
                                                 : g.im.get_str() + "*i";
            if (g.re == 0) return im_part;
            if (g.im > 0) return g.re.get_str() + "+" + im_part;
            return g.re.get_str() + im_part;  // im_part carries its own '-'
        }
    }
    throw DomainError("bad kind");
}

// True when a prints as a bare negative ("-3", "-i", "-2*i").
inline bool is_negative_literal(const CoeffRing& B, const BElem& a) {
    switch (B.kind()) {
        case RingKind::EqualChar: return false;
        case RingKind::MixedChar: return a.zint() < 0;
        case RingKind::MixedCharRamified:
            return (a.gauss().im == 0 && a.gauss().re < 0) ||
                   (a.gauss().re == 0 && a.gauss().im < 0);
    }
    return false;
}

inline std::string format_monomial(const PolyAlg& A, const Monomial& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += A.names()[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

template <typename TermMapT, typename CoeffFmt, typename CoeffNeg, typename CoeffNegate>
std::string format_terms(const PolyAlg& A, const TermMapT& terms, CoeffFmt fmt,
                         CoeffNeg is_neg, CoeffNegate negate) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms) {
        bool minus = is_neg(c);
        std::string cs = fmt(minus ? negate(c) : c);
        std::string mon = format_monomial(A, e);
        std::string piece;
        if (mon.empty()) {
            piece = needs_parens(cs) && cs[0] == '-' ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            piece = mon;
        } else {
            piece = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mon;
        }
        if (out.empty()) {
            out = minus ? "-" + piece : piece;
        } else {
            out += (minus ? " - " : " + ") + piece;
        }
    }
    return out;
}

}  // namespace detail

inline std::string format_b(const CoeffRing& B, const BElem& a) {
    return detail::format_b(B, a);
}

inline std::string format_poly(const Poly& f) {
    const CoeffRing& B = f.alg()->base();
    return detail::format_terms(
        *f.alg(), f.terms(), [&](const BElem& c) { return detail::format_b(B, c); },
        [&](const BElem& c) { return detail::is_negative_literal(B, c); },
        [&](const BElem& c) { return B.neg(c); });
}

inline std::string format_residue(const ResiduePoly& f) {
    const CoeffRing& B = f.alg()->base();
    return detail::format_terms(
        *f.alg(), f.terms(), [&](FqElem c) { return detail::format_fq(B, c); },
        [](FqElem) { return false; }, [](FqElem c) { return c; });
}

}  // namespace wittlab
