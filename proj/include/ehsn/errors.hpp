#ifndef EHSN_ERRORS_HPP
#define EHSN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ehsn {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument or violated precondition.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Charge-curve construction failures, one subclass per rejection reason.
class CurveError : public DomainError {
public:
    explicit CurveError(const std::string& msg) : DomainError(msg) {}
};

class CurveArityError : public CurveError {
public:
    explicit CurveArityError(const std::string& msg) : CurveError(msg) {}
};

class CurveOrderError : public CurveError {
public:
    explicit CurveOrderError(const std::string& msg) : CurveError(msg) {}
};

class CurveShapeError : public CurveError {
public:
    explicit CurveShapeError(const std::string& msg) : CurveError(msg) {}
};

// No monotone trajectory fits inside the tunnel; `slot()` is the first
// slot boundary that cannot be reached.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& msg, int slot) : Error(msg), slot_(slot) {}
    int slot() const { return slot_; }

private:
    int slot_;
};

// A flow for which no feasible route (or route combination) exists.
class InfeasibleFlowError : public Error {
public:
    InfeasibleFlowError(const std::string& msg, int flow_index)
        : Error(msg), flow_index_(flow_index) {}
    int flow_index() const { return flow_index_; }

private:
    int flow_index_;
};

// Refusal to run an exponential enumeration on an oversized instance.
class SizeGuardError : public Error {
public:
    explicit SizeGuardError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line) : Error(msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace ehsn

#endif // EHSN_ERRORS_HPP
