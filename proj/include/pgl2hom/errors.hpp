#pragma once

#include <stdexcept>
#include <string>

namespace pgl2hom {

/// Bad user input: malformed spec strings, out-of-range parameters,
/// dimension mismatches. Maps to CLI usage errors (exit code 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented mathematical hypothesis of an operation is violated
/// (non-local ring, excluded residue field size, ...). The harness
/// reports these as "skipped" with the violated hypothesis.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

/// A size/memory budget would be exceeded. The message carries the
/// estimate so the caller can see how far off it was.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pgl2hom
