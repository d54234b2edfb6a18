#pragma once

// Ring configuration files: flat "key = value" lines with '#' comments.
//
//   ring.kind            EqualChar | MixedChar | MixedCharRamified
//   ring.p               residue characteristic (EqualChar, MixedChar)
//   ring.h               residue field degree, default 1 (EqualChar)
//   ring.modulus         optional; must match the shipped modulus for q = p^h
//   algebra.generators   comma-separated names; omit for A = B
//   frobenius.images.<g> polynomial string; default g^q
//
// A parsed config is a validated (CoeffRing, PolyAlg, FrobLift) triple.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/coeff_ring.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/parse.hpp"
#include "wittlab/poly.hpp"

namespace wittlab {

struct RingConfig {
    CoeffRing ring;
    AlgPtr alg;
    FrobLift phi;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        std::string item = trim(s.substr(start, comma - start));
        if (!item.empty()) out.push_back(item);
        start = comma + 1;
    }
    return out;
}

// Digits of a modulus string like "z^3+2*z+1" (any term order, '+' only).
inline std::vector<std::uint32_t> parse_modulus_digits(const std::string& text,
                                                       std::size_t line) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::vector<std::uint32_t> digits;
    auto put = [&](std::size_t exp, std::uint32_t coef) {
        if (digits.size() <= exp) digits.resize(exp + 1, 0);
        digits[exp] += coef;
    };
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t plus = s.find('+', start);
        if (plus == std::string::npos) plus = s.size();
        std::string term = s.substr(start, plus - start);
        start = plus + 1;
        if (term.empty()) throw ParseError(line, "empty term in ring.modulus");
        std::uint32_t coef = 1;
        std::size_t pos = 0;
        if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            coef = 0;
            while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos])))
                coef = coef * 10 + (term[pos++] - '0');
            if (pos < term.size() && term[pos] == '*') ++pos;
        }
        if (pos == term.size()) {
            put(0, coef);
            continue;
        }
        if (term[pos] != 'z') throw ParseError(line, "ring.modulus may only use 'z'");
        ++pos;
        std::size_t exp = 1;
        if (pos < term.size()) {
            if (term[pos] != '^') throw ParseError(line, "bad term in ring.modulus");
            ++pos;
            if (pos == term.size()) throw ParseError(line, "missing exponent in ring.modulus");
            exp = 0;
            while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos])))
                exp = exp * 10 + (term[pos++] - '0');
        }
        if (pos != term.size()) throw ParseError(line, "bad term in ring.modulus");
        put(exp, coef);
    }
    return digits;
}

}  // namespace detail

inline RingConfig parse_ring_config(const std::string& text) {
    std::map<std::string, std::pair<std::string, std::size_t>> kv;  // key -> (value, line)
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "missing key");
        if (kv.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
        kv[key] = {value, lineno};
    }

    auto take = [&](const std::string& key) -> std::pair<std::string, std::size_t> {
        auto it = kv.find(key);
        if (it == kv.end()) return {"", 0};
        auto v = it->second;
        kv.erase(it);
        return v;
    };
    auto require = [&](const std::string& key) {
        auto v = take(key);
        if (v.second == 0) throw ParseError(0, "missing required key '" + key + "'");
        return v;
    };
    auto as_uint = [](const std::pair<std::string, std::size_t>& v, const std::string& key) {
        for (char c : v.first)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError(v.second, "key '" + key + "' must be a positive integer");
        if (v.first.empty()) throw ParseError(v.second, "key '" + key + "' is empty");
        return static_cast<std::uint32_t>(std::stoul(v.first));
    };

    auto kind_v = require("ring.kind");
    CoeffRing ring = CoeffRing::mixed_char(2);
    if (kind_v.first == "EqualChar") {
        std::uint32_t p = as_uint(require("ring.p"), "ring.p");
        auto h_v = take("ring.h");
        std::uint32_t h = h_v.second ? as_uint(h_v, "ring.h") : 1;
        ring = CoeffRing::equal_char(p, h);
    } else if (kind_v.first == "MixedChar") {
        std::uint32_t p = as_uint(require("ring.p"), "ring.p");
        auto h_v = take("ring.h");
        if (h_v.second && as_uint(h_v, "ring.h") != 1)
            throw ParseError(h_v.second, "MixedChar supports only h = 1");
        ring = CoeffRing::mixed_char(p);
    } else if (kind_v.first == "MixedCharRamified") {
        auto p_v = take("ring.p");
        if (p_v.second && as_uint(p_v, "ring.p") != 2)
            throw ParseError(p_v.second, "MixedCharRamified is fixed to p = 2");
        auto h_v = take("ring.h");
        if (h_v.second && as_uint(h_v, "ring.h") != 1)
            throw ParseError(h_v.second, "MixedCharRamified is fixed to h = 1");
        ring = CoeffRing::mixed_char_ramified();
    } else {
        throw ParseError(kind_v.second, "unknown ring.kind '" + kind_v.first + "'");
    }

    auto mod_v = take("ring.modulus");
    if (mod_v.second) {
        if (ring.h() <= 1)
            throw ParseError(mod_v.second, "ring.modulus is only meaningful for h > 1");
        auto digits = detail::parse_modulus_digits(mod_v.first, mod_v.second);
        std::vector<std::uint32_t> shipped = ring.modulus();
        for (auto& d : digits) d %= ring.p();
        while (!digits.empty() && digits.back() == 0) digits.pop_back();
        if (digits != shipped)
            throw ParseError(mod_v.second,
                             "ring.modulus does not match the shipped modulus for q = " +
                                 std::to_string(ring.q()));
    }

    auto gens_v = take("algebra.generators");
    std::vector<std::string> names =
        gens_v.second ? detail::split_list(gens_v.first) : std::vector<std::string>{};
    AlgPtr alg = PolyAlg::make(ring, names);

    std::vector<Poly> images;
    for (const auto& name : names) {
        auto img_v = take("frobenius.images." + name);
        if (img_v.second == 0) {
            images.push_back(Poly::generator(alg, alg->index_of(name)).pow(ring.q()));
        } else {
            try {
                images.push_back(parse_poly(img_v.first, alg));
            } catch (const ParseError& e) {
                throw ParseError(img_v.second, "in frobenius.images." + name + ": " +
                                                   std::string(e.what()));
            }
        }
    }
    if (!kv.empty()) {
        const auto& [key, v] = *kv.begin();
        throw ParseError(v.second, "unknown key '" + key + "'");
    }

    FrobLift phi(alg, std::move(images));
    validate_frob_lift(phi);
    return RingConfig{std::move(ring), std::move(alg), std::move(phi)};
}

inline RingConfig load_ring_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ring_config(buf.str());
}

}  // namespace wittlab
