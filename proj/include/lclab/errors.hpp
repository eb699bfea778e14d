#pragma once

#include <stdexcept>
#include <string>

namespace lclab {

// Violated operation precondition (bad parameters, malformed input).
// The CLI maps this to exit code 2.
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// A candidate two-coloring oracle failed the structural requirement that the
// gadget construction relies on.  CLI exit code 3.
class disqualified_error : public std::runtime_error {
 public:
  explicit disqualified_error(const std::string& what) : std::runtime_error(what) {}
};

// A round/restart budget was exhausted.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant that must hold by construction failed.  These are the
// "impossible case" branches; seeing one means the implementation is wrong.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace lclab
