#pragma once

#include <stdexcept>
#include <string>

namespace coshom {

/// Malformed caller-supplied data: bad documents, dimension mismatches,
/// unknown names, subsets that are not open.  The CLI maps this to exit 1.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A violated mathematical contract: non-commuting squares, ill-defined
/// homomorphisms, boundaries that do not square to zero.  CLI exit 2.
struct contract_error : std::runtime_error {
  explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coshom
