// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jcs {

enum class ErrorCode {
    NonHermitian,
    NoConvergence,
    DegeneratePencil,
    ShapeMismatch,
    BadAntennaSet,
    MissingDcSubcarrier,
    NoPeaksFound,
    GridTooCoarse,
    XiOutOfRange,
    InvalidInputs,
    NonPositiveSnr,
    ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadAntennaSet: return "BadAntennaSet";
    case ErrorCode::MissingDcSubcarrier: return "MissingDcSubcarrier";
    case ErrorCode::NoPeaksFound: return "NoPeaksFound";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::XiOutOfRange: return "XiOutOfRange";
    case ErrorCode::InvalidInputs: return "InvalidInputs";
    case ErrorCode::NonPositiveSnr: return "NonPositiveSnr";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace jcs
