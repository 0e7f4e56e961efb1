#ifndef BWE_ERRORS_HPP
#define BWE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bwe {

// I/O failures: unreadable files, truncated streams.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents: bad magic, shape mismatch, CRC failure.
struct format_error : io_error {
    explicit format_error(const std::string& msg) : io_error(msg) {}
};

// Non-finite values detected where finite math is required.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bwe

#endif
