#pragma once

#include <stdexcept>
#include <string>

namespace pfk {

// Base class for all toolkit errors. Subclasses map one-to-one onto the
// failure modes of the public operations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidSubset : public Error {
public:
    explicit InvalidSubset(const std::string& msg) : Error(msg) {}
};

class ArityMismatch : public Error {
public:
    explicit ArityMismatch(const std::string& msg) : Error(msg) {}
};

class SingularBasis : public Error {
public:
    explicit SingularBasis(const std::string& msg) : Error(msg) {}
};

class UnsupportedMixedResult : public Error {
public:
    explicit UnsupportedMixedResult(const std::string& msg) : Error(msg) {}
};

class NotSkewSymmetric : public Error {
public:
    explicit NotSkewSymmetric(const std::string& msg) : Error(msg) {}
};

class SizeLimit : public Error {
public:
    explicit SizeLimit(const std::string& msg) : Error(msg) {}
};

class LabelCollision : public Error {
public:
    explicit LabelCollision(const std::string& msg) : Error(msg) {}
};

class OrderMismatch : public Error {
public:
    explicit OrderMismatch(const std::string& msg) : Error(msg) {}
};

class MissingEmbedding : public Error {
public:
    explicit MissingEmbedding(const std::string& msg) : Error(msg) {}
};

class NotTreeConnectable : public Error {
public:
    explicit NotTreeConnectable(const std::string& msg) : Error(msg) {}
};

class OddEdgeCount : public Error {
public:
    explicit OddEdgeCount(const std::string& msg) : Error(msg) {}
};

class UnsupportedWireOrder : public Error {
public:
    explicit UnsupportedWireOrder(const std::string& msg) : Error(msg) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

class WireMismatch : public Error {
public:
    explicit WireMismatch(const std::string& msg) : Error(msg) {}
};

class NotRational : public Error {
public:
    explicit NotRational(const std::string& msg) : Error(msg) {}
};

class SchemeCollision : public Error {
public:
    explicit SchemeCollision(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int col = 0)
        : Error(format(msg, line, col)), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    static std::string format(const std::string& msg, int line, int col) {
        if (line <= 0) return msg;
        return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg;
    }
    int line_ = 0;
    int col_ = 0;
};

}  // namespace pfk
