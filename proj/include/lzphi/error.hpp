// Copyright 2026 The lzphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lzphi {

enum class ErrorCode {
    InvalidArgument,     // generic precondition failure in numerics
    DomainError,         // point or angle outside the family's domain
    IndexRange,          // basis index / quantum number out of range
    FamilyMismatch,      // observable or relation not applicable to the state family
    NotNormalized,       // |sum |c|^2 - 1| above the input tolerance
    InvalidParams,       // relation parameters rejected (N == N1, missing alpha, ...)
    NegativeRadicand,    // Delta-chi radicand is negative for the given N, N1
    Syntax,              // spec text does not follow the grammar
    UnknownRelation,     // relation id outside the closed enumeration
    UnknownFamily,
    UnknownKey,
    MissingKey,
    DuplicateKey,
    EmptyDocument,       // no state or no relation selection
    EmptyReport,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DomainError: return "domain-error";
    case ErrorCode::IndexRange: return "index-range";
    case ErrorCode::FamilyMismatch: return "family-mismatch";
    case ErrorCode::NotNormalized: return "not-normalized";
    case ErrorCode::InvalidParams: return "invalid-params";
    case ErrorCode::NegativeRadicand: return "negative-radicand";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownRelation: return "unknown-relation";
    case ErrorCode::UnknownFamily: return "unknown-family";
    case ErrorCode::UnknownKey: return "unknown-key";
    case ErrorCode::MissingKey: return "missing-key";
    case ErrorCode::DuplicateKey: return "duplicate-key";
    case ErrorCode::EmptyDocument: return "empty-document";
    case ErrorCode::EmptyReport: return "empty-report";
    }
    return "unknown";
}

/// Every failure in the library is reported through this exception. Parser
/// errors additionally carry a 1-based line/column (0 when not applicable).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message, int line = 0, int column = 0)
        : std::runtime_error(format(code, message, line, column)), code_(code), line_(line),
          column_(column) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    static std::string format(ErrorCode code, const std::string &message, int line, int column) {
        std::string out;
        if (line > 0) {
            out += std::to_string(line) + ":" + std::to_string(column) + ": ";
        }
        out += "[";
        out += to_string(code);
        out += "] ";
        out += message;
        return out;
    }

    ErrorCode code_;
    int line_;
    int column_;
};

} // namespace lzphi
