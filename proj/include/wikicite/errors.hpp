#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wikicite {

// Exit-code contract of the CLI: config 1, parse 2, integrity 3.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when dump bytes violate the SQL dump grammar or the declared schema.
class SqlError : public ParseError {
public:
    enum class Kind { Schema, Literal, Truncated, Duplicate };

    SqlError(Kind kind, std::uint64_t byte_offset, const std::string& msg)
        : ParseError(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
          kind_(kind),
          byte_offset_(byte_offset) {}

    Kind kind() const { return kind_; }
    std::uint64_t byte_offset() const { return byte_offset_; }

private:
    Kind kind_;
    std::uint64_t byte_offset_;
};

class XmlError : public ParseError {
public:
    XmlError(std::uint64_t line, const std::string& msg)
        : ParseError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::uint64_t line() const { return line_; }

private:
    std::uint64_t line_;
};

// Cross-stage inconsistency (e.g. a ranked page without a score).
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Strictness { Strict, Lenient };

}  // namespace wikicite
