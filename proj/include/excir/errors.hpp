#pragma once

#include <stdexcept>
#include <string>

namespace excir {

enum class errc {
    invalid_input,
    unknown_column,
    invalid_group,
    invalid_weight,
    invalid_k,
    degenerate_input,
    invalid_fraction,
    empty_sketch,
    io_error,
    parse_error,
    schema_error,
    unknown_feature,
};

inline const char* to_string(errc c) {
    switch (c) {
        case errc::invalid_input: return "invalid_input";
        case errc::unknown_column: return "unknown_column";
        case errc::invalid_group: return "invalid_group";
        case errc::invalid_weight: return "invalid_weight";
        case errc::invalid_k: return "invalid_k";
        case errc::degenerate_input: return "degenerate_input";
        case errc::invalid_fraction: return "invalid_fraction";
        case errc::empty_sketch: return "empty_sketch";
        case errc::io_error: return "io_error";
        case errc::parse_error: return "parse_error";
        case errc::schema_error: return "schema_error";
        case errc::unknown_feature: return "unknown_feature";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace excir
