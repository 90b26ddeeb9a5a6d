// Copyright 2026 The degsir Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace degsir {

enum class ErrorCode {
    NonPositiveStep,
    NegativeRate,
    ThresholdNonPositive,
    GridDegenerate,
    OutOfDomain,
    DegenerateAtEveryPoint,
    IndexOutOfRange,
    NegativeInfected,
    SingularMatrix,
    PositivityViolation,
    QuadratureUnderResolved,
    StiffnessStepTooLarge,
    EmptyRecord,
    ParseError,
    UnknownKey,
    MissingKey,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::ThresholdNonPositive: return "ThresholdNonPositive";
    case ErrorCode::GridDegenerate: return "GridDegenerate";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateAtEveryPoint: return "DegenerateAtEveryPoint";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NegativeInfected: return "NegativeInfected";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::StiffnessStepTooLarge: return "StiffnessStepTooLarge";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Base exception for every failure raised by the library. The code is stable
/// and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    /// Message without the code prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

/// One violated invariant of a configuration.
struct Violation {
    ErrorCode code;
    std::string field;
    std::string reason;
};

/// Raised by config validation; carries every violation found, not just the first.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<Violation> violations)
        : Error(violations.empty() ? ErrorCode::GridDegenerate : violations.front().code,
                describe(violations)),
          violations_(std::move(violations)) {}

    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

    [[nodiscard]] bool names(std::string_view field) const {
        for (const auto& v : violations_) {
            if (v.field == field) return true;
        }
        return false;
    }

private:
    static std::string describe(const std::vector<Violation>& vs) {
        std::string out;
        for (const auto& v : vs) {
            if (!out.empty()) out += "; ";
            out += std::string(to_string(v.code)) + "(" + v.field + "): " + v.reason;
        }
        return out;
    }

    std::vector<Violation> violations_;
};

}  // namespace degsir
