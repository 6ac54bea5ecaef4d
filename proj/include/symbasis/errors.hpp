#pragma once

#include <stdexcept>
#include <string>

namespace symbasis {

// Requested modular data (p, weight) is not available in any loaded dataset.
class data_not_found : public std::runtime_error {
public:
    explicit data_not_found(const std::string& what) : std::runtime_error(what) {}
};

// A basis passed to solve_expansion is dependent, or a target lies outside its span.
class rank_error : public std::runtime_error {
public:
    rank_error(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

// A matrix violates a structural expectation (nonzero entry outside a block, etc.).
class structure_error : public std::runtime_error {
public:
    explicit structure_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency condition failed; indicates a bug, not bad input.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

// Malformed textual or JSON input.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace symbasis
