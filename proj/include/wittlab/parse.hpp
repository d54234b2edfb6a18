#pragma once

// Recursive-descent parser for the polynomial grammar:
//
//   poly    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := atom ['^' nat]
//   atom    := '(' poly ')' | name | integer
//
// Names resolve to algebra generators, or to the reserved base symbols
// t (EqualChar), z (the F_q generator, h > 1), i (MixedCharRamified).
// Whitespace is insignificant. Errors carry the offending position.

#include <cctype>
#include <string>

#include "wittlab/coeff_ring.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/poly.hpp"

namespace wittlab {

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, AlgPtr alg)
        : text_(text), alg_(std::move(alg)) {}

    Poly run() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "empty input");
        Poly f = parse_sum();
        skip_ws();
        if (!at_end())
            throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
        return f;
    }

private:
    static constexpr std::uint64_t kMaxExponent = 1u << 20;

    Poly parse_sum() {
        skip_ws();
        bool neg = accept('-');
        Poly acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            if (accept('+')) {
                acc = acc + parse_term();
            } else if (accept('-')) {
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (!accept('*')) return acc;
            acc = acc * parse_factor();
        }
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        skip_ws();
        if (!accept('^')) return base;
        skip_ws();
        std::size_t at = pos_;
        if (at_end() || !std::isdigit(uchar()))
            throw ParseError(pos_, "expected exponent after '^'");
        std::uint64_t e = 0;
        while (!at_end() && std::isdigit(uchar())) {
            e = e * 10 + (text_[pos_] - '0');
            if (e > kMaxExponent) throw ParseError(at, "exponent too large");
            ++pos_;
        }
        return base.pow(e);
    }

    Poly parse_atom() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "expected a factor");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = parse_sum();
            skip_ws();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(uchar())) {
            std::string digits;
            while (!at_end() && std::isdigit(uchar())) digits += text_[pos_++];
            return Poly::from_int(alg_, mpz_class(digits));
        }
        if (std::isalpha(uchar())) {
            std::size_t at = pos_;
            std::string name;
            while (!at_end() && (std::isalnum(uchar()) || text_[pos_] == '_'))
                name += text_[pos_++];
            return resolve(name, at);
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Poly resolve(const std::string& name, std::size_t at) {
        const CoeffRing& B = alg_->base();
        if (name == "t") {
            if (B.kind() != RingKind::EqualChar)
                throw ParseError(at, "'t' is only valid over an EqualChar base");
            return Poly::constant(alg_, B.t_power(1));
        }
        if (name == "z") {
            if (B.h() <= 1)
                throw ParseError(at, "'z' is only valid when the residue field is F_{p^h}, h > 1");
            return Poly::constant(alg_, B.section(B.fq_gen()));
        }
        if (name == "i") {
            if (B.kind() != RingKind::MixedCharRamified)
                throw ParseError(at, "'i' is only valid over the MixedCharRamified base");
            return Poly::constant(alg_, B.imag_unit());
        }
        for (std::size_t k = 0; k < alg_->m(); ++k)
            if (alg_->names()[k] == name) return Poly::generator(alg_, k);
        throw ParseError(at, "unknown name '" + name + "'");
    }

    bool at_end() const { return pos_ >= text_.size(); }
    unsigned char uchar() const { return static_cast<unsigned char>(text_[pos_]); }

    void skip_ws() {
        while (!at_end() && std::isspace(uchar())) ++pos_;
    }

    bool accept(char c) {
        if (at_end() || text_[pos_] != c) return false;
        ++pos_;
        return true;
    }

    const std::string& text_;
    AlgPtr alg_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const std::string& text, AlgPtr alg) {
    return detail::PolyParser(text, std::move(alg)).run();
}

// Base-ring elements parse as constant polynomials over the 0-generator algebra.
inline BElem parse_b(const std::string& text, const CoeffRing& ring) {
    AlgPtr a0 = PolyAlg::make(ring, std::size_t{0});
    Poly f = detail::PolyParser(text, a0).run();
    return f.constant_term();
}

}  // namespace wittlab
