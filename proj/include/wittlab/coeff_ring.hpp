#pragma once

// Exact arithmetic in the three supported coefficient rings:
//
//   EqualChar          B = F_q[t],  pi = t,    k = F_q, q = p^h, e = 1
//   MixedChar          B = Z,       pi = p,    k = F_p, q = p,   e = 1
//   MixedCharRamified  B = Z[i],    pi = 1+i,  k = F_2, q = 2,   e = 2
//
// Elements are immutable values; all operations are pure functions on the
// ring object, which owns the field tables/modulus needed to reduce them.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wittlab/errors.hpp"

namespace wittlab {

enum class RingKind { EqualChar, MixedChar, MixedCharRamified };

inline const char* to_string(RingKind k) {
    switch (k) {
        case RingKind::EqualChar: return "EqualChar";
        case RingKind::MixedChar: return "MixedChar";
        case RingKind::MixedCharRamified: return "MixedCharRamified";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Valuation values live in N ∪ {∞}; ∞ is the valuation of 0.

struct Valuation {
    static Valuation inf() { return Valuation{true, 0}; }
    static Valuation of(std::int64_t n) { return Valuation{false, n}; }

    bool infinite = true;
    std::int64_t v = 0;

    bool operator==(const Valuation&) const = default;
    bool operator<(const Valuation& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return v < o.v;
    }
    bool operator>=(const Valuation& o) const { return !(*this < o); }

    // at_least(n): true also for the zero element
    bool at_least(std::int64_t n) const { return infinite || v >= n; }

    std::string str() const { return infinite ? "inf" : std::to_string(v); }
};

inline Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite || b.infinite) return Valuation::inf();
    return Valuation::of(a.v + b.v);
}

// ---------------------------------------------------------------------------
// Residue field element. The z-polynomial c_0 + c_1 z + ... + c_{h-1} z^{h-1}
// with digits c_i in [0,p) is packed as the index sum c_i p^i.

struct FqElem {
    std::uint64_t idx = 0;
    bool operator==(const FqElem&) const = default;
    bool is_zero() const { return idx == 0; }
};

// Gaussian integer a + b*i.
struct GaussInt {
    mpz_class re, im;
    bool operator==(const GaussInt&) const = default;
};

// Coefficients of 1, t, t^2, ... with packed F_q values; no trailing zeros.
struct TPoly {
    std::vector<std::uint64_t> c;
    bool operator==(const TPoly&) const = default;
};

// An element of B. The active alternative is determined by the ring kind.
class BElem {
public:
    BElem() = default;
    explicit BElem(TPoly v) : v_(std::move(v)) {}
    explicit BElem(mpz_class v) : v_(std::move(v)) {}
    explicit BElem(GaussInt v) : v_(std::move(v)) {}

    const TPoly& tpoly() const { return std::get<TPoly>(v_); }
    const mpz_class& zint() const { return std::get<mpz_class>(v_); }
    const GaussInt& gauss() const { return std::get<GaussInt>(v_); }

    std::size_t which() const { return v_.index(); }
    bool operator==(const BElem&) const = default;

private:
    friend class CoeffRing;
    TPoly& tpoly_mut() { return std::get<TPoly>(v_); }
    mpz_class& zint_mut() { return std::get<mpz_class>(v_); }
    GaussInt& gauss_mut() { return std::get<GaussInt>(v_); }

    std::variant<TPoly, mpz_class, GaussInt> v_;
};

enum class BOp { Add, Sub, Mul, Neg };
enum class FqOp { Add, Mul, Inv, Pow };

// ---------------------------------------------------------------------------

class CoeffRing {
public:
    // F_p[t] for h = 1, or F_q[t] with q = p^h from the shipped modulus table.
    static CoeffRing equal_char(std::uint32_t p, std::uint32_t h) {
        CoeffRing r;
        r.kind_ = RingKind::EqualChar;
        r.init_field(p, h);
        r.e_ = 1;
        return r;
    }

    static CoeffRing mixed_char(std::uint32_t p) {
        CoeffRing r;
        r.kind_ = RingKind::MixedChar;
        r.init_field(p, 1);
        r.e_ = 1;
        return r;
    }

    static CoeffRing mixed_char_ramified() {
        CoeffRing r;
        r.kind_ = RingKind::MixedCharRamified;
        r.init_field(2, 1);
        r.e_ = 2;
        return r;
    }

    RingKind kind() const { return kind_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t h() const { return h_; }
    std::uint64_t q() const { return q_; }
    std::uint32_t e() const { return e_; }
    // Monic modulus of the residue field as z-digit vector (empty for h = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool operator==(const CoeffRing& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && h_ == o.h_;
    }
    bool operator!=(const CoeffRing& o) const { return !(*this == o); }

    // ---- residue field -----------------------------------------------------

    FqElem fq_zero() const { return FqElem{0}; }
    FqElem fq_one() const { return FqElem{1}; }
    // The class of z itself; only meaningful for h > 1.
    FqElem fq_gen() const { return FqElem{p_}; }

    std::vector<std::uint32_t> fq_digits(FqElem a) const {
        std::vector<std::uint32_t> d(h_);
        std::uint64_t x = a.idx;
        for (std::uint32_t i = 0; i < h_; ++i) {
            d[i] = static_cast<std::uint32_t>(x % p_);
            x /= p_;
        }
        return d;
    }

    FqElem fq_from_digits(const std::vector<std::uint32_t>& d) const {
        std::uint64_t x = 0;
        for (std::size_t i = d.size(); i-- > 0;) x = x * p_ + d[i] % p_;
        return FqElem{x};
    }

    FqElem fq_from_int(const mpz_class& n) const {
        mpz_class r = n % p_;
        if (r < 0) r += p_;
        return FqElem{r.get_ui()};
    }

    FqElem fq_add(FqElem a, FqElem b) const {
        std::uint64_t out = 0, mul = 1;
        std::uint64_t x = a.idx, y = b.idx;
        for (std::uint32_t i = 0; i < h_; ++i) {
            out += ((x + y) % p_) * mul;
            x /= p_;
            y /= p_;
            mul *= p_;
        }
        return FqElem{out};
    }

    FqElem fq_neg(FqElem a) const {
        std::uint64_t out = 0, mul = 1, x = a.idx;
        for (std::uint32_t i = 0; i < h_; ++i) {
            out += ((p_ - x % p_) % p_) * mul;
            x /= p_;
            mul *= p_;
        }
        return FqElem{out};
    }

    FqElem fq_sub(FqElem a, FqElem b) const { return fq_add(a, fq_neg(b)); }

    FqElem fq_mul(FqElem a, FqElem b) const {
        if (h_ == 1) return FqElem{(a.idx * b.idx) % p_};
        std::array<std::uint64_t, 7> buf{};  // h <= 4, conv length 2h-1
        auto da = fq_digits(a), db = fq_digits(b);
        for (std::uint32_t i = 0; i < h_; ++i)
            for (std::uint32_t j = 0; j < h_; ++j)
                buf[i + j] = (buf[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
        // fold z^j for j >= h using z^h = -(low part of modulus)
        for (std::uint32_t j = 2 * h_ - 2; j >= h_; --j) {
            std::uint64_t c = buf[j] % p_;
            buf[j] = 0;
            if (c == 0) continue;
            for (std::uint32_t k = 0; k < h_; ++k) {
                std::uint64_t sub = (c * modulus_[k]) % p_;
                buf[j - h_ + k] = (buf[j - h_ + k] + p_ - sub) % p_;
            }
        }
        std::uint64_t out = 0, mul = 1;
        for (std::uint32_t i = 0; i < h_; ++i) {
            out += (buf[i] % p_) * mul;
            mul *= p_;
        }
        return FqElem{out};
    }

    FqElem fq_pow(FqElem a, std::uint64_t n) const {
        FqElem acc = fq_one();
        FqElem base = a;
        while (n > 0) {
            if (n & 1) acc = fq_mul(acc, base);
            base = fq_mul(base, base);
            n >>= 1;
        }
        return acc;
    }

    FqElem fq_inv(FqElem a) const {
        if (a.is_zero()) throw DivisionByZero("inverse of 0 in F_q");
        return fq_pow(a, q_ - 2);
    }

    FqElem fq_arith(FqElem a, FqElem b, FqOp op) const {
        switch (op) {
            case FqOp::Add: return fq_add(a, b);
            case FqOp::Mul: return fq_mul(a, b);
            case FqOp::Inv: return fq_inv(a);
            case FqOp::Pow: return fq_pow(a, b.idx);
        }
        throw DomainError("bad FqOp");
    }

    // ---- elements of B -----------------------------------------------------

    BElem zero() const {
        switch (kind_) {
            case RingKind::EqualChar: return BElem(TPoly{});
            case RingKind::MixedChar: return BElem(mpz_class(0));
            case RingKind::MixedCharRamified: return BElem(GaussInt{0, 0});
        }
        throw DomainError("bad kind");
    }

    BElem one() const { return from_int(1); }

    BElem pi() const {
        switch (kind_) {
            case RingKind::EqualChar: return BElem(TPoly{{0, 1}});
            case RingKind::MixedChar: return BElem(mpz_class(p_));
            case RingKind::MixedCharRamified: return BElem(GaussInt{1, 1});
        }
        throw DomainError("bad kind");
    }

    // The imaginary unit; Z[i] only.
    BElem imag_unit() const {
        require_kind(RingKind::MixedCharRamified, "imag_unit");
        return BElem(GaussInt{0, 1});
    }

    BElem from_int(const mpz_class& n) const {
        switch (kind_) {
            case RingKind::EqualChar: {
                FqElem c = fq_from_int(n);
                return c.is_zero() ? BElem(TPoly{}) : BElem(TPoly{{c.idx}});
            }
            case RingKind::MixedChar: return BElem(mpz_class(n));
            case RingKind::MixedCharRamified: return BElem(GaussInt{n, 0});
        }
        throw DomainError("bad kind");
    }

    BElem from_fq(FqElem c) const { return section(c); }

    // t^k (EqualChar only).
    BElem t_power(std::uint32_t k) const {
        require_kind(RingKind::EqualChar, "t_power");
        TPoly t;
        t.c.assign(k + 1, 0);
        t.c[k] = 1;
        return BElem(std::move(t));
    }

    bool is_zero(const BElem& a) const {
        switch (kind_) {
            case RingKind::EqualChar: return a.tpoly().c.empty();
            case RingKind::MixedChar: return a.zint() == 0;
            case RingKind::MixedCharRamified:
                return a.gauss().re == 0 && a.gauss().im == 0;
        }
        throw DomainError("bad kind");
    }

    bool is_one(const BElem& a) const { return a == one(); }

    BElem add(const BElem& a, const BElem& b) const {
        check_pair(a, b);
        switch (kind_) {
            case RingKind::EqualChar: {
                const auto& x = a.tpoly().c;
                const auto& y = b.tpoly().c;
                TPoly out;
                out.c.resize(std::max(x.size(), y.size()), 0);
                for (std::size_t i = 0; i < out.c.size(); ++i) {
                    FqElem s = fq_add(FqElem{i < x.size() ? x[i] : 0},
                                      FqElem{i < y.size() ? y[i] : 0});
                    out.c[i] = s.idx;
                }
                trim(out);
                return BElem(std::move(out));
            }
            case RingKind::MixedChar: return BElem(mpz_class(a.zint() + b.zint()));
            case RingKind::MixedCharRamified:
                return BElem(GaussInt{a.gauss().re + b.gauss().re,
                                      a.gauss().im + b.gauss().im});
        }
        throw DomainError("bad kind");
    }

    BElem neg(const BElem& a) const {
        check_elem(a);
        switch (kind_) {
            case RingKind::EqualChar: {
                TPoly out = a.tpoly();
                for (auto& ci : out.c) ci = fq_neg(FqElem{ci}).idx;
                return BElem(std::move(out));
            }
            case RingKind::MixedChar: return BElem(mpz_class(-a.zint()));
            case RingKind::MixedCharRamified:
                return BElem(GaussInt{-a.gauss().re, -a.gauss().im});
        }
        throw DomainError("bad kind");
    }

    BElem sub(const BElem& a, const BElem& b) const { return add(a, neg(b)); }

    BElem mul(const BElem& a, const BElem& b) const {
        check_pair(a, b);
        switch (kind_) {
            case RingKind::EqualChar: {
                const auto& x = a.tpoly().c;
                const auto& y = b.tpoly().c;
                if (x.empty() || y.empty()) return zero();
                TPoly out;
                out.c.assign(x.size() + y.size() - 1, 0);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (x[i] == 0) continue;
                    for (std::size_t j = 0; j < y.size(); ++j) {
                        if (y[j] == 0) continue;
                        FqElem s = fq_add(FqElem{out.c[i + j]},
                                          fq_mul(FqElem{x[i]}, FqElem{y[j]}));
                        out.c[i + j] = s.idx;
                    }
                }
                trim(out);
                return BElem(std::move(out));
            }
            case RingKind::MixedChar: return BElem(mpz_class(a.zint() * b.zint()));
            case RingKind::MixedCharRamified: {
                const auto& x = a.gauss();
                const auto& y = b.gauss();
                return BElem(GaussInt{x.re * y.re - x.im * y.im,
                                      x.re * y.im + x.im * y.re});
            }
        }
        throw DomainError("bad kind");
    }

    // acc <- acc + a*b in place; acc must not alias a or b. Avoids the
    // temporary that add(acc, mul(a, b)) would allocate, which dominates in
    // accumulation-heavy polynomial products.
    void addmul(BElem& acc, const BElem& a, const BElem& b) const {
        check_pair(a, b);
        check_elem(acc);
        switch (kind_) {
            case RingKind::EqualChar: {
                const auto& x = a.tpoly().c;
                const auto& y = b.tpoly().c;
                if (x.empty() || y.empty()) return;
                auto& o = acc.tpoly_mut().c;
                if (o.size() < x.size() + y.size() - 1)
                    o.resize(x.size() + y.size() - 1, 0);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (x[i] == 0) continue;
                    for (std::size_t j = 0; j < y.size(); ++j) {
                        if (y[j] == 0) continue;
                        o[i + j] =
                            fq_add(FqElem{o[i + j]}, fq_mul(FqElem{x[i]}, FqElem{y[j]})).idx;
                    }
                }
                trim(acc.tpoly_mut());
                return;
            }
            case RingKind::MixedChar:
                mpz_addmul(acc.zint_mut().get_mpz_t(), a.zint().get_mpz_t(),
                           b.zint().get_mpz_t());
                return;
            case RingKind::MixedCharRamified: {
                GaussInt& o = acc.gauss_mut();
                const GaussInt& x = a.gauss();
                const GaussInt& y = b.gauss();
                mpz_addmul(o.re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
                mpz_submul(o.re.get_mpz_t(), x.im.get_mpz_t(), y.im.get_mpz_t());
                mpz_addmul(o.im.get_mpz_t(), x.re.get_mpz_t(), y.im.get_mpz_t());
                mpz_addmul(o.im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
                return;
            }
        }
        throw DomainError("bad kind");
    }

    BElem arith(const BElem& a, const BElem& b, BOp op) const {
        switch (op) {
            case BOp::Add: return add(a, b);
            case BOp::Sub: return sub(a, b);
            case BOp::Mul: return mul(a, b);
            case BOp::Neg: return neg(a);
        }
        throw DomainError("bad BOp");
    }

    // In EqualChar the p-power map is coefficientwise Frobenius plus an index
    // spread, so powers strip characteristic factors in O(size) steps.
    BElem pow(const BElem& a, std::uint64_t n) const {
        if (n == 0) return one();
        if (n == 1) return a;
        if (kind_ == RingKind::EqualChar && n % p_ == 0)
            return pow(frobenius_p(a), n / p_);
        if (n % 2 == 0) {
            BElem s = pow(a, n / 2);
            return mul(s, s);
        }
        return mul(a, pow(a, n - 1));
    }

    // ---- valuation and exact division --------------------------------------

    Valuation v_pi(const BElem& a) const {
        check_elem(a);
        switch (kind_) {
            case RingKind::EqualChar: {
                const auto& c = a.tpoly().c;
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (c[i] != 0) return Valuation::of(static_cast<std::int64_t>(i));
                return Valuation::inf();
            }
            case RingKind::MixedChar: {
                if (a.zint() == 0) return Valuation::inf();
                mpz_class rem;
                mp_bitcnt_t n = mpz_remove(rem.get_mpz_t(), a.zint().get_mpz_t(),
                                           mpz_class(p_).get_mpz_t());
                return Valuation::of(static_cast<std::int64_t>(n));
            }
            case RingKind::MixedCharRamified: {
                const auto& g = a.gauss();
                if (g.re == 0 && g.im == 0) return Valuation::inf();
                // v_pi equals the 2-adic valuation of the Gaussian norm
                mpz_class norm = g.re * g.re + g.im * g.im;
                mpz_class rem;
                mp_bitcnt_t n = mpz_remove(rem.get_mpz_t(), norm.get_mpz_t(),
                                           mpz_class(2).get_mpz_t());
                return Valuation::of(static_cast<std::int64_t>(n));
            }
        }
        throw DomainError("bad kind");
    }

    BElem exact_div_pi(const BElem& a, std::uint32_t n) const {
        check_elem(a);
        if (n == 0) return a;
        switch (kind_) {
            case RingKind::EqualChar: {
                const auto& c = a.tpoly().c;
                if (c.empty()) return zero();
                if (c.size() <= n)
                    throw NotDivisible("t^" + std::to_string(n) + " does not divide element");
                for (std::size_t i = 0; i < n; ++i)
                    if (c[i] != 0)
                        throw NotDivisible("t^" + std::to_string(n) + " does not divide element");
                TPoly out;
                out.c.assign(c.begin() + n, c.end());
                trim(out);
                return BElem(std::move(out));
            }
            case RingKind::MixedChar: {
                mpz_class d = a.zint();
                mpz_class pn;
                mpz_pow_ui(pn.get_mpz_t(), mpz_class(p_).get_mpz_t(), n);
                if (!mpz_divisible_p(d.get_mpz_t(), pn.get_mpz_t()))
                    throw NotDivisible("p^" + std::to_string(n) + " does not divide element");
                return BElem(mpz_class(d / pn));
            }
            case RingKind::MixedCharRamified: {
                // divide by (1+i) n times: x/(1+i) = x(1-i)/2
                GaussInt g = a.gauss();
                for (std::uint32_t s = 0; s < n; ++s) {
                    mpz_class re2 = g.re + g.im;
                    mpz_class im2 = g.im - g.re;
                    if (mpz_odd_p(re2.get_mpz_t()) || mpz_odd_p(im2.get_mpz_t()))
                        throw NotDivisible("(1+i)^" + std::to_string(n) +
                                           " does not divide element");
                    g.re = re2 / 2;
                    g.im = im2 / 2;
                }
                return BElem(std::move(g));
            }
        }
        throw DomainError("bad kind");
    }

    // (a - a^q) / pi; total on B since a == a^q mod pi.
    BElem delta(const BElem& a) const {
        BElem num = sub(a, pow(a, q_));
        return exact_div_pi(num, 1);
    }

    // Canonical representative of a mod pi^(N+1), via the digit expansion
    // a = d_0 + d_1 pi + d_2 pi^2 + ... with d_j in the image of section().
    BElem reduce_mod(const BElem& a, std::uint32_t N) const {
        check_elem(a);
        BElem rest = a;
        BElem out = zero();
        BElem pw = one();
        for (std::uint32_t j = 0; j < N; ++j) {
            BElem digit = section(residue(rest));
            out = add(out, mul(digit, pw));
            rest = exact_div_pi(sub(rest, digit), 1);
            pw = mul(pw, pi());
        }
        return out;
    }

    // ---- residue map and its section ---------------------------------------

    FqElem residue(const BElem& a) const {
        check_elem(a);
        switch (kind_) {
            case RingKind::EqualChar:
                return a.tpoly().c.empty() ? fq_zero() : FqElem{a.tpoly().c[0]};
            case RingKind::MixedChar:
                return fq_from_int(a.zint());
            case RingKind::MixedCharRamified:
                return fq_from_int(a.gauss().re + a.gauss().im);
        }
        throw DomainError("bad kind");
    }

    BElem section(FqElem c) const {
        switch (kind_) {
            case RingKind::EqualChar:
                return c.is_zero() ? BElem(TPoly{}) : BElem(TPoly{{c.idx}});
            case RingKind::MixedChar:
                return BElem(mpz_class(static_cast<unsigned long>(c.idx)));
            case RingKind::MixedCharRamified:
                return BElem(GaussInt{static_cast<long>(c.idx), 0});
        }
        throw DomainError("bad kind");
    }

private:
    RingKind kind_ = RingKind::MixedChar;
    std::uint32_t p_ = 2, h_ = 1, e_ = 1;
    std::uint64_t q_ = 2;
    std::vector<std::uint32_t> modulus_;  // digits of the monic modulus, h > 1

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    void init_field(std::uint32_t p, std::uint32_t h) {
        if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
        p_ = p;
        h_ = h;
        q_ = 1;
        for (std::uint32_t i = 0; i < h; ++i) q_ *= p;
        if (h > 1) {
            modulus_ = shipped_modulus(q_);
        }
    }

    // Fixed irreducible moduli so field tables are identical across runs.
    static std::vector<std::uint32_t> shipped_modulus(std::uint64_t q) {
        switch (q) {
            case 4: return {1, 1, 1};        // z^2 + z + 1
            case 8: return {1, 1, 0, 1};     // z^3 + z + 1
            case 9: return {1, 0, 1};        // z^2 + 1
            case 16: return {1, 1, 0, 0, 1}; // z^4 + z + 1
            case 25: return {2, 0, 1};       // z^2 + 2
            case 27: return {1, 2, 0, 1};    // z^3 + 2z + 1
        }
        throw DomainError("no shipped modulus for q = " + std::to_string(q));
    }

    static void trim(TPoly& t) {
        while (!t.c.empty() && t.c.back() == 0) t.c.pop_back();
    }

    void require_kind(RingKind k, const char* what) const {
        if (kind_ != k)
            throw DomainError(std::string(what) + " not defined for " + to_string(kind_));
    }

    void check_elem(const BElem& a) const {
        if (a.which() != static_cast<std::size_t>(kind_))
            throw RingMismatch("element does not belong to a " +
                               std::string(to_string(kind_)) + " ring");
    }

    void check_pair(const BElem& a, const BElem& b) const {
        check_elem(a);
        check_elem(b);
    }

    BElem frobenius_p(const BElem& a) const {
        // EqualChar only: (sum c_i t^i)^p = sum c_i^p t^(i p)
        const auto& c = a.tpoly().c;
        if (c.empty()) return zero();
        TPoly out;
        out.c.assign((c.size() - 1) * p_ + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) out.c[i * p_] = fq_pow(FqElem{c[i]}, p_).idx;
        return BElem(std::move(out));
    }
};

}  // namespace wittlab
