#pragma once

// Error taxonomy for the whole library.  Every failure mode that callers are
// expected to handle gets its own code so the CLI can map it to an exit status
// and the python layer can translate it to a ValueError subclass.  The `code()`
// string is stable API; the message is free-form detail.

#include <stdexcept>
#include <string>

namespace permutrees {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// helper so every throw site reads the same
#define PERMUTREES_DEFINE_ERROR(NAME)                                  \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& message) : Error(#NAME, message) {} \
    }

PERMUTREES_DEFINE_ERROR(UnknownLetter);     // decoration letter outside {o,d,u,b}
PERMUTREES_DEFINE_ERROR(EmptyInput);        // empty decoration / permutation / partition
PERMUTREES_DEFINE_ERROR(InvalidTree);       // structure violates the tree axioms
PERMUTREES_DEFINE_ERROR(NotAnEdge);         // rotation target is not an internal edge
PERMUTREES_DEFINE_ERROR(DecorationMismatch);// operands decorated differently
PERMUTREES_DEFINE_ERROR(NotARefinement);    // coarser/finer relation requested but absent
PERMUTREES_DEFINE_ERROR(SizeBound);         // instance exceeds the configured size bound
PERMUTREES_DEFINE_ERROR(MethodInapplicable);// counting method outside its domain
PERMUTREES_DEFINE_ERROR(ScopeError);        // operation outside its decoration scope
PERMUTREES_DEFINE_ERROR(DegreeBound);       // truncated series degree too large
PERMUTREES_DEFINE_ERROR(MixedGrading);      // tensor/test inputs of inconsistent sizes
PERMUTREES_DEFINE_ERROR(EmptyOperand);      // algebra operation on an empty sum
PERMUTREES_DEFINE_ERROR(SizeMismatch);      // sizes that must agree do not

#undef PERMUTREES_DEFINE_ERROR

}  // namespace permutrees
