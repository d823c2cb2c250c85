#pragma once

#include <stdexcept>
#include <string>

namespace hvol {

enum class ErrorKind {
    InvalidModel,         // malformed singularity model
    Domain,               // weight or argument outside the allowed domain
    NonKltWeight,         // log discrepancy formula left the positive region
    NonKltModel,          // no weight gives a positive log discrepancy
    UnsupportedModel,     // operation not defined for this model class
    InvalidWeight,        // e.g. toric weight outside the interior of sigma
    Capacity,             // lattice count would overflow
    InvalidCurve,         // malformed volume curve
    InternalConsistency,  // two independent routes disagree
    Schema,               // input document does not match the schema
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hvol
