#ifndef VANET_ERRORS_HPP
#define VANET_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vanet {

enum class Errc {
    message_too_large,
    decryption_failed,
    malformed_plaintext,
    malformed_message,
    already_registered,
    not_registered,
    unauthorized_ca,
    certificate_revoked,  // the Denied outcome of the certificate gate
    out_of_coverage,
    invalid_region_map,
    invalid_scenario,
    trace_incomplete,
    config_error,
    io_error,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::message_too_large: return "MessageTooLarge";
        case Errc::decryption_failed: return "DecryptionFailed";
        case Errc::malformed_plaintext: return "MalformedPlaintext";
        case Errc::malformed_message: return "MalformedMessage";
        case Errc::already_registered: return "AlreadyRegistered";
        case Errc::not_registered: return "NotRegistered";
        case Errc::unauthorized_ca: return "UnauthorizedCa";
        case Errc::certificate_revoked: return "Denied";
        case Errc::out_of_coverage: return "OutOfCoverage";
        case Errc::invalid_region_map: return "InvalidRegionMap";
        case Errc::invalid_scenario: return "InvalidScenario";
        case Errc::trace_incomplete: return "TraceIncomplete";
        case Errc::config_error: return "ConfigError";
        case Errc::io_error: return "IoError";
    }
    return "Error";
}

}  // namespace vanet

#endif  // VANET_ERRORS_HPP
