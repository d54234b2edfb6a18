#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/parse.hpp"
#include "wittlab/poly.hpp"
#include "wittlab/rng.hpp"

using namespace wittlab;

namespace {

Poly sample(const AlgPtr& alg, Rng& rng) {
    const CoeffRing& B = alg->base();
    Poly f = Poly::zero(alg);
    std::size_t terms = 1 + rng.below(4);
    for (std::size_t k = 0; k < terms; ++k) {
        Monomial e(alg->m());
        for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(4));
        BElem c;
        if (B.kind() == RingKind::EqualChar) {
            TPoly t;
            t.c.resize(1 + rng.below(3));
            for (auto& d : t.c) d = rng.below(B.q());
            c = B.add(BElem(t), B.zero());  // canonicalize (trim trailing zeros)
        } else if (B.kind() == RingKind::MixedChar) {
            c = B.from_int(static_cast<long>(rng.range(0, 20)) - 10);
        } else {
            c = BElem(GaussInt{mpz_class(static_cast<long>(rng.range(0, 10)) - 5),
                               mpz_class(static_cast<long>(rng.range(0, 10)) - 5)});
        }
        f = f + Poly::monomial(alg, e, c);
    }
    return f;
}

std::vector<AlgPtr> sample_algebras() {
    return {PolyAlg::make(CoeffRing::equal_char(2, 1), 1),
            PolyAlg::make(CoeffRing::equal_char(2, 2), 2),
            PolyAlg::make(CoeffRing::equal_char(3, 1), 1),
            PolyAlg::make(CoeffRing::mixed_char(2), 2),
            PolyAlg::make(CoeffRing::mixed_char(3), 1),
            PolyAlg::make(CoeffRing::mixed_char_ramified(), 1)};
}

}  // namespace

TEST_CASE("generator naming and validation") {
    auto B = CoeffRing::mixed_char(2);
    auto one_gen = PolyAlg::make(B, 1);
    CHECK(one_gen->names() == std::vector<std::string>{"u"});
    auto three = PolyAlg::make(B, 3);
    CHECK(three->names() == std::vector<std::string>{"u1", "u2", "u3"});
    CHECK(three->index_of("u2") == 1);

    CHECK_THROWS_AS(PolyAlg::make(B, {"t"}), DomainError);   // reserved
    CHECK_THROWS_AS(PolyAlg::make(B, {"z"}), DomainError);   // reserved
    CHECK_THROWS_AS(PolyAlg::make(B, {"i"}), DomainError);   // reserved
    CHECK_THROWS_AS(PolyAlg::make(B, {"a", "a"}), DomainError);  // duplicate
    CHECK_THROWS_AS(PolyAlg::make(B, {"2x"}), DomainError);  // must start with a letter
    CHECK_THROWS_AS(PolyAlg::make(B, {""}), DomainError);
}

TEST_CASE("graded lexicographic term order") {
    auto alg = PolyAlg::make(CoeffRing::mixed_char(2), 2);
    GrlexLess less;
    CHECK(less(Monomial{0, 0}, Monomial{1, 0}));  // degree first
    CHECK(less(Monomial{0, 2}, Monomial{1, 2}));
    CHECK(less(Monomial{0, 1}, Monomial{1, 0}));  // same degree: lex on exponents
    CHECK_FALSE(less(Monomial{1, 0}, Monomial{0, 1}));
    // Formatting follows the ascending order.
    Poly f = Poly::generator(alg, 0) + Poly::generator(alg, 1) + Poly::one(alg) +
             Poly::generator(alg, 0) * Poly::generator(alg, 1);
    CHECK(format_poly(f) == "1 + u2 + u1 + u1*u2");
}

TEST_CASE("ring axioms on random polynomials") {
    for (const auto& alg : sample_algebras()) {
        Rng rng(17);
        for (int trial = 0; trial < 25; ++trial) {
            Poly a = sample(alg, rng), b = sample(alg, rng), c = sample(alg, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == Poly::zero(alg));
            CHECK(a * Poly::one(alg) == a);
            CHECK(a.pow(3) == a * a * a);
        }
    }
}

TEST_CASE("char-p power fast path agrees with repeated multiplication") {
    auto alg = PolyAlg::make(CoeffRing::equal_char(2, 2), 1);  // q = 4
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Poly a = sample(alg, rng);
        Poly naive = Poly::one(alg);
        for (int k = 0; k < 8; ++k) naive = naive * a;
        CHECK(a.pow(8) == naive);
    }
}

TEST_CASE("polynomial valuation is the content valuation") {
    auto alg = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    const CoeffRing& B = alg->base();
    Poly u = Poly::generator(alg, 0);
    Poly f = u.scalar_mul(B.t_power(2)) + Poly::constant(alg, B.t_power(3));
    CHECK(v_pi(f) == Valuation::of(2));
    CHECK(v_pi(Poly::zero(alg)).infinite);
    CHECK(exact_div_pi(f, 2) == u + Poly::constant(alg, B.t_power(1)));
    CHECK_THROWS_AS(exact_div_pi(f, 3), NotDivisible);
    CHECK(v_pi(f.times_pi()) == Valuation::of(3));
}

TEST_CASE("residue reduction and lifting") {
    for (const auto& alg : sample_algebras()) {
        Rng rng(29);
        for (int trial = 0; trial < 20; ++trial) {
            Poly f = sample(alg, rng);
            ResiduePoly r = to_residue(f);
            // lift(to_residue(f)) differs from f by a multiple of pi.
            CHECK(v_pi(f - lift(r)).at_least(1));
            // to_residue is a ring homomorphism.
            Poly g = sample(alg, rng);
            CHECK(to_residue(f + g) == to_residue(f) + to_residue(g));
            CHECK(to_residue(f * g) == to_residue(f) * to_residue(g));
            for (std::uint32_t N : {1u, 2u}) {
                Poly red = reduce_mod(f, N);
                CHECK(v_pi(f - red).at_least(N));
                CHECK(reduce_mod(red, N) == red);
            }
        }
    }
}

TEST_CASE("pinned reductions") {
    auto alg = PolyAlg::make(CoeffRing::mixed_char(2), 1);
    Poly u = Poly::generator(alg, 0);
    // 5u + 8 reduces to u mod 2.
    Poly f = u.scalar_mul(alg->base().from_int(5)) + Poly::from_int(alg, 8);
    CHECK(reduce_mod(f, 1) == u);
}

TEST_CASE("carry polynomial") {
    auto eq = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    Poly u = Poly::generator(eq, 0);
    CHECK(c_pi(u, Poly::one(eq)).is_zero());  // equal characteristic: no carries

    auto m2 = PolyAlg::make(CoeffRing::mixed_char(2), 2);
    Poly x = Poly::generator(m2, 0), y = Poly::generator(m2, 1);
    // C_pi(x, y) = (x^2 + y^2 - (x+y)^2)/2 = -x y.
    CHECK(c_pi(x, y) == -(x * y));
    CHECK(c_pi(Poly::one(m2), Poly::one(m2)) == Poly::from_int(m2, -1));

    auto m3 = PolyAlg::make(CoeffRing::mixed_char(3), 2);
    Poly a = Poly::generator(m3, 0), b = Poly::generator(m3, 1);
    // (a^3 + b^3 - (a+b)^3)/3 = -a^2 b - a b^2.
    CHECK(c_pi(a, b) == -(a * a * b) - (a * b * b));
}

TEST_CASE("homomorphism application substitutes generator images") {
    auto alg = PolyAlg::make(CoeffRing::mixed_char(2), 2);
    Poly u1 = Poly::generator(alg, 0), u2 = Poly::generator(alg, 1);
    Poly f = u1 * u1 + u2.scalar_mul(alg->base().from_int(3));
    // u1 -> u2, u2 -> u1 u2
    Poly g = apply_hom(FrobLift(alg, {u2, u1 * u2}), f);
    CHECK(g == u2 * u2 + (u1 * u2).scalar_mul(alg->base().from_int(3)));
    CHECK_THROWS_AS(FrobLift(alg, {u1}), DomainError);  // wrong image count
}

TEST_CASE("Frobenius lift validation") {
    auto alg = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    Poly u = Poly::generator(alg, 0);
    const CoeffRing& B = alg->base();

    CHECK_NOTHROW(validate_frob_lift(FrobLift(alg, {u.pow(2)})));
    CHECK_NOTHROW(validate_frob_lift(FrobLift(alg, {u.pow(2) + Poly::constant(alg, B.t_power(3))})));
    // u^2 + 1 is not a lift: the defect 1 is a unit.
    try {
        validate_frob_lift(FrobLift(alg, {u.pow(2) + Poly::one(alg)}));
        FAIL("expected NotAFrobeniusLift");
    } catch (const NotAFrobeniusLift& err) {
        CHECK(std::string(err.what()).find("u") != std::string::npos);
    }

    auto m2 = PolyAlg::make(CoeffRing::mixed_char(2), 1);
    Poly v = Poly::generator(m2, 0);
    CHECK_NOTHROW(validate_frob_lift(FrobLift(m2, {v.pow(2) + v.scalar_mul(m2->base().from_int(2))})));
    CHECK_THROWS_AS(validate_frob_lift(FrobLift(m2, {v.pow(3)})), NotAFrobeniusLift);
}

TEST_CASE("delta on polynomials") {
    auto alg = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    const CoeffRing& B = alg->base();
    Poly u = Poly::generator(alg, 0);
    FrobLift phi(alg, {u.pow(2)});

    // delta(t u) = ((t u^2) - (t u)^2)/t = (1 + t) u^2.
    Poly tu = u.scalar_mul(B.t_power(1));
    Poly expect = (u * u).scalar_mul(B.add(B.one(), B.t_power(1)));
    CHECK(delta_apply(phi, tu) == expect);
    // u itself is a constant for the standard lift.
    CHECK(delta_apply(phi, u).is_zero());
    CHECK(delta_apply(phi, u.pow(3)).is_zero());

    // Sum and product rules against c_pi.
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Poly a = sample(alg, rng), b = sample(alg, rng);
        Poly da = delta_apply(phi, a), db = delta_apply(phi, b);
        CHECK(delta_apply(phi, a + b) == da + db + c_pi(a, b));
        Poly prod_rule = a.pow(B.q()) * db + b.pow(B.q()) * da + (da * db).times_pi();
        CHECK(delta_apply(phi, a * b) == prod_rule);
    }
}

TEST_CASE("canonical formatting") {
    auto alg = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    const CoeffRing& B = alg->base();
    Poly u = Poly::generator(alg, 0);
    CHECK(format_poly(Poly::zero(alg)) == "0");
    CHECK(format_poly(Poly::one(alg)) == "1");
    CHECK(format_poly(u.pow(2).scalar_mul(B.add(B.one(), B.t_power(1)))) == "(1+t)*u^2");
    CHECK(format_poly(u + Poly::constant(alg, B.t_power(1))) == "t + u");

    auto m2 = PolyAlg::make(CoeffRing::mixed_char(2), 1);
    Poly v = Poly::generator(m2, 0);
    CHECK(format_poly(Poly::from_int(m2, -3) + v) == "-3 + u");
    CHECK(format_poly(v.scalar_mul(m2->base().from_int(-2))) == "-2*u");

    auto ram = PolyAlg::make(CoeffRing::mixed_char_ramified(), 1);
    Poly w = Poly::generator(ram, 0);
    const CoeffRing& R = ram->base();
    BElem c = R.add(R.from_int(-3), R.mul(R.from_int(2), R.imag_unit()));
    CHECK(format_poly(w.scalar_mul(c)) == "(-3+2*i)*u");
    CHECK(format_b(R, c) == "-3+2*i");
}

TEST_CASE("format / parse round trip on random polynomials") {
    for (const auto& alg : sample_algebras()) {
        Rng rng(37);
        for (int trial = 0; trial < 25; ++trial) {
            Poly f = sample(alg, rng);
            CHECK(parse_poly(format_poly(f), alg) == f);
        }
    }
}

TEST_CASE("cross-algebra operations are rejected") {
    auto a1 = PolyAlg::make(CoeffRing::mixed_char(2), 1);
    auto a2 = PolyAlg::make(CoeffRing::mixed_char(3), 1);
    CHECK_THROWS_AS(Poly::generator(a1, 0) + Poly::generator(a2, 0), IncompatibleRing);
    // Same parameters, different instances: structural equality applies.
    auto a3 = PolyAlg::make(CoeffRing::mixed_char(2), 1);
    CHECK_NOTHROW(Poly::generator(a1, 0) + Poly::generator(a3, 0));
}
