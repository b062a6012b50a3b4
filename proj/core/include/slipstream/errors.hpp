#pragma once

#include <stdexcept>
#include <string>

namespace slipstream {

struct Error : std::runtime_error {
    Error(const std::string& kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(kind) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define SLIPSTREAM_ERROR(Name)                                        \
    struct Name : Error {                                             \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}  \
    }

SLIPSTREAM_ERROR(IncompatibleFlux);
SLIPSTREAM_ERROR(BadTheta);
SLIPSTREAM_ERROR(BadDelta);
SLIPSTREAM_ERROR(BadSigma);
SLIPSTREAM_ERROR(CflViolation);
SLIPSTREAM_ERROR(NanDetected);
SLIPSTREAM_ERROR(MissingHistory);
SLIPSTREAM_ERROR(NoConvergence);
SLIPSTREAM_ERROR(SolverDiverged);
SLIPSTREAM_ERROR(HypothesisFailed);
SLIPSTREAM_ERROR(ParseError);
SLIPSTREAM_ERROR(ValidationError);

#undef SLIPSTREAM_ERROR

} // namespace slipstream
