#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spk {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct IllegalConnective : Error {
  explicit IllegalConnective(const std::string& msg) : Error(msg) {}
};

// Byte range into the original input, attached to every parse error.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct SyntaxError : Error {
  SourceSpan span;
  std::string expectation;
  SyntaxError(SourceSpan s, const std::string& expected)
      : Error("syntax error at " + std::to_string(s.start) + ".." + std::to_string(s.end) +
              ": expected " + expected),
        span(s),
        expectation(expected) {}
};

struct EmptyAntecedent : Error {
  explicit EmptyAntecedent(const std::string& msg) : Error(msg) {}
};

struct MultipleSuccedents : Error {
  explicit MultipleSuccedents(const std::string& msg) : Error(msg) {}
};

struct UnsupportedLogic : Error {
  explicit UnsupportedLogic(const std::string& msg) : Error(msg) {}
};

struct ForeignPosition : Error {
  explicit ForeignPosition(const std::string& msg) : Error(msg) {}
};

struct MalformedStructuralLink : Error {
  explicit MalformedStructuralLink(const std::string& msg) : Error(msg) {}
};

struct NotProvable : Error {
  explicit NotProvable(const std::string& msg) : Error(msg) {}
};

struct ResourceLimit : Error {
  explicit ResourceLimit(const std::string& msg) : Error(msg) {}
};

}  // namespace spk
