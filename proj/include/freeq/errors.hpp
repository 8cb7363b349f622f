#ifndef FREEQ_ERRORS_HPP
#define FREEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace freeq {

/*
 * Error taxonomy. The CLI maps each kind to an exit code:
 *   ValidationError -> 2   (bad input: config, presentation, group table)
 *   WindowError     -> 3   (degree window too small for an exact answer)
 *   InvariantError  -> 4   (internal invariant broken, e.g. d^2 != 0)
 * DimensionError is a programming error in library use (mismatched shapes).
 */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what, std::string where = {})
        : Error(where.empty() ? what : where + ": " + what), m_where(std::move(where)) {}
    const std::string& where() const { return m_where; }

private:
    std::string m_where;
};

class WindowError : public Error {
public:
    // required_min/required_max: the degree range the caller should realize
    // instead; equal to the current bounds when that side is fine.
    WindowError(const std::string& what, int required_min, int required_max)
        : Error(what), m_required_min(required_min), m_required_max(required_max) {}
    int required_min() const { return m_required_min; }
    int required_max() const { return m_required_max; }

private:
    int m_required_min;
    int m_required_max;
};

class InvariantError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

}  // namespace freeq

#endif
