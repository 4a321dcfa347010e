#pragma once

#include <stdexcept>
#include <string>

namespace cosinor {

// Malformed or inconsistent input data (files, tables, gene alignment).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure could not produce a result (singular systems).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cosinor
