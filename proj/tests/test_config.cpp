#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "wittlab/config.hpp"
#include "wittlab/errors.hpp"

#ifndef WITTLAB_CONFIG_DIR
#define WITTLAB_CONFIG_DIR "configs"
#endif

using namespace wittlab;

TEST_CASE("minimal equal characteristic config") {
    RingConfig rc = parse_ring_config(
        "ring.kind = EqualChar\n"
        "ring.p = 2\n"
        "algebra.generators = u\n"
        "frobenius.images.u = u^2\n");
    CHECK(rc.ring.kind() == RingKind::EqualChar);
    CHECK(rc.ring.p() == 2);
    CHECK(rc.ring.q() == 2);
    CHECK(rc.alg->names() == std::vector<std::string>{"u"});
    CHECK(rc.phi.images()[0] == Poly::generator(rc.alg, 0).pow(2));
}

TEST_CASE("default Frobenius image is the q-th power") {
    RingConfig rc = parse_ring_config(
        "ring.kind = EqualChar\n"
        "ring.p = 2\n"
        "ring.h = 2\n"
        "algebra.generators = a, b\n");
    CHECK(rc.ring.q() == 4);
    CHECK(rc.phi.images()[0] == Poly::generator(rc.alg, 0).pow(4));
    CHECK(rc.phi.images()[1] == Poly::generator(rc.alg, 1).pow(4));
}

TEST_CASE("no generators yields the base ring itself") {
    RingConfig rc = parse_ring_config(
        "ring.kind = MixedChar\n"
        "ring.p = 3\n");
    CHECK(rc.alg->m() == 0);
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
    RingConfig rc = parse_ring_config(
        "# leading comment\n"
        "\n"
        "  ring.kind   =   MixedCharRamified   # trailing comment\n"
        "algebra.generators=u\n"
        "frobenius.images.u = u^2 + (1+i)*u\n");
    CHECK(rc.ring.kind() == RingKind::MixedCharRamified);
    CHECK(rc.ring.e() == 2);
}

TEST_CASE("shipped config files load and validate") {
    for (const char* name : {"eqchar2.cfg", "eqchar4.cfg", "mixed2.cfg", "mixed3.cfg",
                             "ramified.cfg", "eqchar2_perturbed.cfg"}) {
        RingConfig rc = load_ring_config(std::string(WITTLAB_CONFIG_DIR) + "/" + name);
        CHECK_NOTHROW(validate_frob_lift(rc.phi));
    }
    CHECK_THROWS_AS(load_ring_config("configs/does_not_exist.cfg"), DomainError);
}

TEST_CASE("errors carry useful positions") {
    // Missing required key.
    CHECK_THROWS_AS(parse_ring_config("algebra.generators = u\n"), ParseError);
    // Unknown kind.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = Wonky\n"), ParseError);
    // Duplicate key.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = MixedChar\nring.p = 2\nring.p = 3\n"),
                    ParseError);
    // Unknown key.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = MixedChar\nring.p = 2\nring.frob = u\n"),
                    ParseError);
    // Non-numeric p.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = MixedChar\nring.p = two\n"), ParseError);
    // Line without '='.
    CHECK_THROWS_AS(parse_ring_config("ring.kind MixedChar\n"), ParseError);
    // Image for a generator that does not exist.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = MixedChar\nring.p = 2\n"
                                      "algebra.generators = u\n"
                                      "frobenius.images.v = u^2\n"),
                    ParseError);
    // Image that is not a Frobenius lift.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = EqualChar\nring.p = 2\n"
                                      "algebra.generators = u\n"
                                      "frobenius.images.u = u^3\n"),
                    NotAFrobeniusLift);
    // Image that fails to parse: the error is rewrapped naming the key, with
    // pos carrying the 1-based config line.
    try {
        parse_ring_config("ring.kind = EqualChar\nring.p = 2\n"
                          "algebra.generators = u\n"
                          "frobenius.images.u = u^\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("frobenius.images.u") != std::string::npos);
        CHECK(e.pos == 4);
    }
}

TEST_CASE("kind-specific parameter constraints") {
    // MixedChar with h != 1 is rejected.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = MixedChar\nring.p = 2\nring.h = 2\n"),
                    ParseError);
    // Ramified ring only admits p = 2.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = MixedCharRamified\nring.p = 3\n"),
                    ParseError);
    CHECK_NOTHROW(parse_ring_config("ring.kind = MixedCharRamified\nring.p = 2\n"));
    // Modulus must match the shipped one for the field size.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = EqualChar\nring.p = 2\nring.h = 2\n"
                                      "ring.modulus = 1 + z^2\n"),
                    ParseError);
    CHECK_NOTHROW(parse_ring_config("ring.kind = EqualChar\nring.p = 2\nring.h = 2\n"
                                    "ring.modulus = 1 + z + z^2\n"));
    // A modulus on a prime field is meaningless.
    CHECK_THROWS_AS(parse_ring_config("ring.kind = EqualChar\nring.p = 2\n"
                                      "ring.modulus = 1 + z\n"),
                    ParseError);
}

TEST_CASE("multiple generators with cross-referencing images") {
    RingConfig rc = parse_ring_config(
        "ring.kind = MixedChar\n"
        "ring.p = 2\n"
        "algebra.generators = x, y\n"
        "frobenius.images.x = x^2 + 2*y\n"
        "frobenius.images.y = y^2\n");
    Poly x = Poly::generator(rc.alg, 0), y = Poly::generator(rc.alg, 1);
    CHECK(rc.phi.images()[0] == x.pow(2) + y.scalar_mul(rc.ring.from_int(2)));
    CHECK(rc.phi.images()[1] == y.pow(2));
}
