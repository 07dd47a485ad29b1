#pragma once

#include <stdexcept>
#include <string>

namespace bsll {

// A desk-scale guard tripped (group order, enumeration size, ball size, ...).
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Collection did not reach a normal form within its rewrite budget.
class NonTermination : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Coset enumeration ran out of room before the table closed.
class OracleInconclusive : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Data failed a re-verification that must always succeed; carries the
// counterexample in the message.
class StructureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace bsll
