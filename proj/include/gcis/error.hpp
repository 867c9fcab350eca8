#pragma once

#include <stdexcept>
#include <string>

namespace gcis {

enum class errc {
    empty_input,
    unknown_symbol,
    out_of_range,
    invalid_value,
    overflow,
    not_bitonic,
    bad_magic,
    version_mismatch,
    truncated_stream,
    checksum_mismatch,
    io,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

} // namespace gcis
