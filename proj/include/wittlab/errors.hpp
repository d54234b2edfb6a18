#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wittlab {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands belong to different coefficient rings or algebras.
struct RingMismatch : Error {
    explicit RingMismatch(const std::string& msg) : Error(msg) {}
};

// Preconditions on lengths, degrees, names, etc.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// exact_div_pi asked to remove more uniformizer factors than present.
struct NotDivisible : Error {
    explicit NotDivisible(const std::string& msg) : Error(msg) {}
};

// A ghost vector with no Witt preimage; `index` is the first bad component.
struct NotInGhostImage : Error {
    NotInGhostImage(std::size_t index, const std::string& msg)
        : Error(msg), index(index) {}
    std::size_t index;
};

// A claimed Frobenius lift whose generator image is not a q-power mod pi.
struct NotAFrobeniusLift : Error {
    NotAFrobeniusLift(const std::string& generator, const std::string& witness)
        : Error("not a Frobenius lift: phi(" + generator + ") != " + generator +
                "^q mod pi (residue witness: " + witness + ")"),
          generator(generator), witness(witness) {}
    std::string generator;
    std::string witness;
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

// Text input rejected; `pos` is a 0-based character offset.
struct ParseError : Error {
    ParseError(std::size_t pos, const std::string& msg)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), pos(pos) {}
    std::size_t pos;
};

struct UnknownSuite : Error {
    explicit UnknownSuite(const std::string& name)
        : Error("unknown suite: " + name) {}
};

struct IncompatibleRing : Error {
    explicit IncompatibleRing(const std::string& msg) : Error(msg) {}
};

// An exhaustive scan or sampled run would exceed the configured work budget.
struct BudgetExceeded : Error {
    BudgetExceeded(std::uint64_t count, const std::string& msg)
        : Error(msg), count(count) {}
    std::uint64_t count;
};

// A truncation level above the configured ceiling.
struct BoundExceeded : Error {
    explicit BoundExceeded(const std::string& msg) : Error(msg) {}
};

// An invariant the library guarantees was violated; always a bug.
struct InternalError : Error {
    explicit InternalError(const std::string& msg)
        : Error("internal invariant violation: " + msg) {}
};

}  // namespace wittlab
