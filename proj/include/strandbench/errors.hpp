#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strandbench {

/// Malformed user input (bad sequence text, bad JSON shape, DSL syntax).
/// line/column are 1-based; 0 means "not applicable".
class input_error : public std::runtime_error {
  public:
    explicit input_error(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) {
            return what;
        }
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// A precondition on an operation's arguments was violated.
class argument_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace strandbench
