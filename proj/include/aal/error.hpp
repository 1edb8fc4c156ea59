// aal — error types shared across the library.
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace aal {

// Base class for every error raised by the library. Subclasses exist so
// callers can catch one failure family without string-matching messages.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- vocabulary / parsing ---------------------------------------------

// Bad character or malformed token in the input text.
struct LexError : Error {
    using Error::Error;
};

// Structurally malformed input (unbalanced brackets, unexpected token).
struct SyntaxError : Error {
    using Error::Error;
};

// Invalid agent/atom declaration (reserved word, duplicate, bad identifier).
struct VocabError : Error {
    using Error::Error;
};

// --- models -------------------------------------------------------------

// Model document violates the schema (missing field, wrong type, version).
struct SchemaError : Error {
    using Error::Error;
};

// An agent's partition overlaps or does not cover the state set.
struct PartitionError : Error {
    using Error::Error;
};

struct UnknownAtom : Error {
    using Error::Error;
};

struct UnknownAgent : Error {
    using Error::Error;
};

struct UnknownState : Error {
    using Error::Error;
};

// --- semantics / validity / proofs --------------------------------------

// The minus-variant satisfaction relation is defined on histories only.
struct NotAHistory : Error {
    using Error::Error;
};

// An axiom schema's side condition (reception/announcement counting) fails.
struct SideConditionViolated : Error {
    using Error::Error;
};

// An axiom schema instantiation is missing one of its metavariables.
struct IncompleteBindings : Error {
    using Error::Error;
};

// The tautology checker refuses truth tables over more than 20 letters.
struct TooManyLetters : Error {
    using Error::Error;
};

} // namespace aal
