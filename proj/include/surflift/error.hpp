#pragma once

#include <stdexcept>
#include <string>

namespace surflift {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Input fails a structural invariant (bad table, bad hom, relator violation, ...). */
struct ValidationError : Error {
    using Error::Error;
};

/* A numeric routine could not certify its result within tolerance. */
struct NumericalError : Error {
    using Error::Error;
};

/* An enumeration would exceed the configured work budget. */
struct BudgetError : Error {
    using Error::Error;
};

} // namespace surflift
