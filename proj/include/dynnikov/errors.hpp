#pragma once

#include <stdexcept>
#include <string>

namespace dyn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };
struct NoDominantRealRoot : Error { using Error::Error; };
struct NotIrreducible : Error { using Error::Error; };
struct TieAtBasepoint : Error { using Error::Error; };

}  // namespace dyn
