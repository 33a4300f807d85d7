#pragma once

#include <stdexcept>
#include <string>

namespace thz {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NoSuchChannel : public Error {
public:
    explicit NoSuchChannel(int id)
        : Error("no channel with id " + std::to_string(id)) {}
};

class NoFeasibleMcs : public Error {
public:
    NoFeasibleMcs() : Error("no MCS closes the link budget") {}
};

/// Invalid user input (CLI flags, scenario files, out-of-range parameters).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

} // namespace thz
