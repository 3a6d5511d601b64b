#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stemsim {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input (XML syntax, bad binary index file, ...). Carries the
/// source position when one is known; line/column are 1-based, 0 = unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        if (line == 0) {
            return msg;
        }
        return msg + " at line " + std::to_string(line) + ", column " + std::to_string(column);
    }

    std::size_t line_;
    std::size_t column_;
};

/// Structurally valid input that violates a documented schema. `field` names
/// the offending key or element.
class SchemaError : public Error {
public:
    SchemaError(const std::string& field, const std::string& msg)
        : Error("field '" + field + "': " + msg), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace stemsim
