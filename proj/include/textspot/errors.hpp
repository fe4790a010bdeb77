#pragma once

#include <stdexcept>
#include <string>

namespace textspot {

struct OutOfBoundsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateQuadError : std::runtime_error {
    explicit DegenerateQuadError(const std::string& msg, int line = -1)
        : std::runtime_error(msg), line(line) {}
    int line;  // 1-based source line when raised by a parser, -1 otherwise
};

struct SpecMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg, int line = -1, std::string file = {})
        : std::runtime_error(msg), line(line), file(std::move(file)) {}
    int line;
    std::string file;
};

struct MissingFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFailedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace textspot
