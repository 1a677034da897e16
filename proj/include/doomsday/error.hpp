/*
 * Copyright 2026 The doomsday authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace doomsday {

enum class ErrorKind {
    DeadlockState,
    UnknownState,
    BadOwner,
    DuplicateState,
    DuplicateEdge,
    BadObjective,
    BrokenPath,
    UnknownLetter,
    AlphabetMismatch,
    RecursionLimit,
    SizeLimit,
    MalformedCertificate,
    BudgetExceeded,
    SyntaxError,
    MissingObjective,
    DuplicateObjective,
    BadParams,
};

const char *to_string(ErrorKind kind);

/// Every failure raised by the library. The kind identifies the condition,
/// the message carries the offending identifiers.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &detail);

    ErrorKind kind() const noexcept { return kind_; }

    /// True for conditions signalling that an instance is too large rather
    /// than malformed (SizeLimit, BudgetExceeded, RecursionLimit).
    bool is_resource_limit() const noexcept;

private:
    ErrorKind kind_;
};

} // namespace doomsday
